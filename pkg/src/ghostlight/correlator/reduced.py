"""Reduced engine: analytic source integrals, Gauss-Legendre over the object.

Every (x1, x2) source integral has the form

    int int W(x1, x2) exp(i phi1(x1) + i phi2(x2)) dx1 dx2

with W the Gaussian Schell-model density and phi_j quadratic phases, so it is
a 2-D complex Gaussian integral. It is assembled in the rotated coordinates
s = (x1 + x2)/2, t = x1 - x2 (unit Jacobian): the large 1/(2 sigma_g^2) term
then sits on one diagonal entry and det(M) is free of cancellation even at
sigma_g = 1e-5 mm.
"""

import math
from dataclasses import dataclass

import numpy as np

from .._quadrature import gauss_legendre
from ..errors import DegenerateKernelError, NumericalError
from .gaussian import ComplexQuadraticForm, gaussian_exponent, gaussian_prefactor
from .propagation import DEGENERATE_B

IMAG_RESIDUE_TOL = 1e-9


@dataclass(frozen=True)
class Leg:
    """Quadratic phase alpha x^2 + beta x + gamma of one source-side factor.

    ``beta`` and ``gamma`` may be arrays (batched over detector/object points).
    """

    alpha: float
    beta: object
    gamma: object

    def conj(self):
        return Leg(-self.alpha, -np.asarray(self.beta), -np.asarray(self.gamma))


def fresnel_leg(k, z, v):
    v = np.asarray(v, dtype=float)
    return Leg(k / (2.0 * z), -k * v / z, k * v**2 / (2.0 * z))


def collins_leg(k, m, u):
    u = np.asarray(u, dtype=float)
    return Leg(k * m.a / (2.0 * m.b), -k * u / m.b, k * m.d * u**2 / (2.0 * m.b))


def source_form(src, leg1, leg2):
    """Quadratic form in (s, t) for W(x1, x2) exp(i phi1(x1) + i phi2(x2))."""
    r = 1.0 / (4.0 * src.sigma_I**2)
    coh = 1.0 / (2.0 * src.sigma_g**2)
    p1 = r - 1j * leg1.alpha
    p2 = r - 1j * leg2.alpha
    M = np.array([[p1 + p2, 0.5 * (p1 - p2)], [0.5 * (p1 - p2), 0.25 * (p1 + p2) + coh]])
    b1 = 1j * np.asarray(leg1.beta)
    b2 = 1j * np.asarray(leg2.beta)
    b1, b2 = np.broadcast_arrays(b1, b2)
    b = np.stack([b1 + b2, 0.5 * (b1 - b2)], axis=-1)
    c0 = 1j * (np.asarray(leg1.gamma) + np.asarray(leg2.gamma))
    return ComplexQuadraticForm(M, b, c0)


def _norm(wavelength, length):
    return (1j * wavelength * length + 0j) ** -0.5


class ReducedModel:
    """Exponent builders for Γ, <I1> and <I2> of one configuration."""

    def __init__(self, geom, ctx, src):
        self.geom, self.ctx, self.src = geom, ctx, src
        self.k = ctx.k
        self.m2 = geom.path2()
        if abs(self.m2.b) < DEGENERATE_B:
            raise DegenerateKernelError(
                "path-two matrix has b = 0 (D2 sits in the source's image plane); "
                "use the effective_image_matrix formulation instead"
            )
        lam = ctx.wavelength
        k = self.k
        self.axial2 = geom.l1 + geom.l2
        self.n_z1 = _norm(lam, geom.z1) * np.exp(1j * k * geom.z1)
        self.n_z2 = _norm(lam, geom.z2) * np.exp(1j * k * geom.z2)
        self.n_b = _norm(lam, self.m2.b) * np.exp(1j * k * self.axial2)

    # -- Γ(u1, u2) --------------------------------------------------------
    def gamma_form(self, v, u2):
        return source_form(self.src, fresnel_leg(self.k, self.geom.z1, v).conj(), collins_leg(self.k, self.m2, u2))

    def gamma_exponent(self, v, u1, u2):
        v = np.asarray(v, dtype=float)
        q = self.gamma_form(v, u2)
        # conj of the z2 Fresnel factor from the object plane to D1
        return gaussian_exponent(q) - 1j * self.k * (v - u1) ** 2 / (2.0 * self.geom.z2)

    def gamma_constant(self):
        q = self.gamma_form(0.0, 0.0)
        return gaussian_prefactor(q) * np.conj(self.n_z1) * np.conj(self.n_z2) * self.n_b

    # -- <I(u1)> ------------------------------------------------------------
    def i1_form(self, v, vp):
        k, z1 = self.k, self.geom.z1
        return source_form(self.src, fresnel_leg(k, z1, v).conj(), fresnel_leg(k, z1, vp))

    def i1_exponent(self, v, vp, u1):
        v = np.asarray(v, dtype=float)
        vp = np.asarray(vp, dtype=float)
        k, z2 = self.k, self.geom.z2
        q = self.i1_form(v, vp)
        return gaussian_exponent(q) - 1j * k * (v - u1) ** 2 / (2 * z2) + 1j * k * (vp - u1) ** 2 / (2 * z2)

    def i1_constant(self):
        return gaussian_prefactor(self.i1_form(0.0, 0.0)) * abs(self.n_z1) ** 2 * abs(self.n_z2) ** 2

    # -- <I(u2)> ------------------------------------------------------------
    def i2_form(self, u2):
        leg = collins_leg(self.k, self.m2, u2)
        return source_form(self.src, leg.conj(), leg)

    def i2(self, u2):
        q = self.i2_form(u2)
        value = gaussian_prefactor(q) * np.exp(gaussian_exponent(q)) * abs(self.n_b) ** 2
        return _real_part(value, "<I2>")


def _real_part(value, label):
    value = np.asarray(value)
    scale = np.max(np.abs(value), initial=0.0)
    residue = np.max(np.abs(value.imag), initial=0.0)
    if residue > IMAG_RESIDUE_TOL * scale + 1e-300:
        raise NumericalError(f"{label} has imaginary residue {residue:.3e} (scale {scale:.3e})")
    out = value.real
    return float(out) if out.ndim == 0 else out


# -- aperture quadrature ------------------------------------------------------

def _gl_panels(lo, hi, n, panels):
    x, w = gauss_legendre(n)
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def aperture_nodes(obj, n, density):
    """Gauss-Legendre nodes over every interval of ``obj``.

    ``density(lo, hi)`` returns the integrand's feature density (rad/mm-like);
    an interval of width L gets ceil(L * density / (n - 8)) panels.
    """
    nodes, weights, amps = [], [], []
    for lo, hi, amp in obj.intervals:
        rate = density(lo, hi)
        panels = max(1, int(math.ceil((hi - lo) * rate / (n - 8))))
        x, w = _gl_panels(lo, hi, n, panels)
        nodes.append(x)
        weights.append(w)
        amps.append(np.full(x.shape, amp, dtype=complex))
    if not nodes:
        return np.empty(0), np.empty(0), np.empty(0, dtype=complex)
    return np.concatenate(nodes), np.concatenate(weights), np.concatenate(amps)


def _quadratic_probe_1d(fn, center, h):
    """Second derivative and slope function of an exactly-quadratic ``fn``."""
    fp, f0, fm = fn(center + h), fn(center), fn(center - h)
    curvature = (fp + fm - 2.0 * f0) / (h * h)  # = 2 kappa
    slope_c = (fp - fm) / (2.0 * h)
    return curvature, slope_c


def reduced_density(model, obj, u1, u2):
    """Feature density of the Γ and <I1> integrands over the object plane.

    Both exponents are exactly quadratic in the object coordinates, so three
    probes per axis recover curvature and slope everywhere.
    """
    if not obj.intervals:
        return lambda lo, hi: 0.0
    lo_all = min(iv[0] for iv in obj.intervals)
    hi_all = max(iv[1] for iv in obj.intervals)
    c = 0.5 * (lo_all + hi_all)
    h = max(0.5 * (hi_all - lo_all), 1e-9)
    u2 = np.atleast_1d(np.asarray(u2, dtype=float))
    u_ends = np.array([u2.min(), u2.max()])

    curv_g, slope_g = _quadratic_probe_1d(lambda v: model.gamma_exponent(v, u1, u_ends), c, h)

    e = lambda a, b: model.i1_exponent(a, b, u1)
    e0 = e(c, c)
    c00 = (e(c + h, c) + e(c - h, c) - 2 * e0) / h**2
    c11 = (e(c, c + h) + e(c, c - h) - 2 * e0) / h**2
    c01 = (e(c + h, c + h) - e(c + h, c - h) - e(c - h, c + h) + e(c - h, c - h)) / (4 * h * h)
    g0 = (e(c + h, c) - e(c - h, c)) / (2 * h)
    g1 = (e(c, c + h) - e(c, c - h)) / (2 * h)
    curv = max(float(np.max(np.abs(curv_g))), abs(c00), abs(c11), abs(c01))

    def density(lo, hi):
        omega = 0.0
        for v in (lo, hi):
            omega = max(omega, float(np.max(np.abs((slope_g + curv_g * (v - c)).imag))))
            for vp in (lo, hi):
                d0 = g0 + c00 * (v - c) + c01 * (vp - c)
                d1 = g1 + c11 * (vp - c) + c01 * (v - c)
                omega = max(omega, abs(d0.imag), abs(d1.imag))
        return 4.0 * math.sqrt(curv / 2.0) + omega

    return density


def gamma_scan(model, obj, u1, u2, n_aperture, nodes=None):
    u2 = np.atleast_1d(np.asarray(u2, dtype=float))
    if nodes is None:
        nodes = aperture_nodes(obj, n_aperture, reduced_density(model, obj, u1, u2))
    v, w, amp = nodes
    if v.size == 0:
        return np.zeros(u2.shape, dtype=complex)
    expo = model.gamma_exponent(v[:, None], u1, u2[None, :])
    weights = w * np.conj(amp)
    return model.gamma_constant() * (weights @ np.exp(expo))


def mean_intensity_1(model, obj, u1, n_aperture, nodes=None, u2_hint=(0.0,)):
    if nodes is None:
        nodes = aperture_nodes(obj, n_aperture, reduced_density(model, obj, u1, u2_hint))
    v, w, amp = nodes
    if v.size == 0:
        return 0.0
    expo = model.i1_exponent(v[:, None], v[None, :], u1)
    c = w * amp
    value = model.i1_constant() * (np.conj(c) @ np.exp(expo) @ c)
    return _real_part(value, "<I1>")
