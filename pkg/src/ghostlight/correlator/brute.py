"""Brute-force engine: trapezoid quadrature over the source, Gauss-Legendre over the object.

The source plane is sampled in s = (x1 + x2)/2 and t = x1 - x2 with independent
extents, so a coherence width far below sigma_I stays resolvable. The object
response h1(x) and every detector sum reduce to chirp sums

    out[m] = sum_j c_j exp(i q x_j u_m)

which run in the numba (or numpy) kernel.
"""

import itertools
import math

import numpy as np

from .._kernels import chirp_sum
from ..errors import BruteResolutionError, DegenerateKernelError
from .propagation import DEGENERATE_B
from .reduced import _gl_panels, _norm, _real_part

# spectral margin, in units of 1/sigma_env, demanded beyond the phase gradient
ENVELOPE_MARGIN = 8.0


class BruteModel:
    def __init__(self, geom, ctx, src, cfg):
        self.geom, self.ctx, self.src, self.cfg = geom, ctx, src, cfg
        self.k = ctx.k
        self.m2 = geom.path2()
        if abs(self.m2.b) < DEGENERATE_B:
            raise DegenerateKernelError(
                "path-two matrix has b = 0 (D2 sits in the source's image plane); "
                "use the effective_image_matrix formulation instead"
            )
        lam = ctx.wavelength
        self.n_z1 = _norm(lam, geom.z1) * np.exp(1j * self.k * geom.z1)
        self.n_z2 = _norm(lam, geom.z2) * np.exp(1j * self.k * geom.z2)
        self.n_b = _norm(lam, self.m2.b) * np.exp(1j * self.k * (geom.l1 + geom.l2))

        self.s_half = cfg.source_extent * src.sigma_I
        self.t_half = cfg.diff_extent * src.sigma_g
        s, ws = _trapezoid(self.s_half, cfg.n_source)
        t, wt = _trapezoid(self.t_half, cfg.t_points)
        self.hs, self.ht = s[1] - s[0], t[1] - t[0]
        S, T = np.meshgrid(s, t, indexing="ij")
        self.x1 = (S + 0.5 * T).ravel()
        self.x2 = (S - 0.5 * T).ravel()
        env = np.exp(-(self.x1**2 + self.x2**2) / (4 * src.sigma_I**2) - T.ravel() ** 2 / (2 * src.sigma_g**2))
        self.weight = env * np.outer(ws, wt).ravel()

    # -- resolvability -------------------------------------------------------
    def check_resolution(self, obj, u1, u2):
        """Refuse grids whose spacing cannot carry the integrand's oscillation."""
        v_ext = _object_extent(obj)
        u_ext = (float(np.min(u2)), float(np.max(u2)))
        k, z1, m = self.k, self.geom.z1, self.m2

        def grads():
            for s, t in itertools.product((-self.s_half, self.s_half), (-self.t_half, self.t_half)):
                x1, x2 = s + 0.5 * t, s - 0.5 * t
                for v, vp in itertools.product(v_ext, v_ext):
                    yield -k * (x1 - v) / z1, k * (x2 - vp) / z1  # <I1>
                    for u in u_ext:
                        yield -k * (x1 - v) / z1, k * (m.a * x2 - u) / m.b  # Γ
                for u in u_ext:
                    yield -k * (m.a * x1 - u) / m.b, k * (m.a * x2 - u) / m.b  # <I2>

        omega_s = omega_t = 0.0
        for d1, d2 in grads():
            omega_s = max(omega_s, abs(d1 + d2))
            omega_t = max(omega_t, abs(0.5 * (d1 - d2)))
        si, sg = self.src.sigma_I, self.src.sigma_g
        env_t = 1.0 / math.sqrt(1.0 / (4 * si**2) + 1.0 / sg**2)
        need_s = omega_s + ENVELOPE_MARGIN / si
        need_t = omega_t + ENVELOPE_MARGIN / env_t
        for name, h, need, n_now, half in (
            ("n_source", self.hs, need_s, self.cfg.n_source, self.s_half),
            ("n_diff", self.ht, need_t, self.cfg.t_points, self.t_half),
        ):
            if 2 * math.pi / h < need:
                n_req = int(math.ceil(2 * half * need / (2 * math.pi))) + 1
                raise BruteResolutionError(
                    f"brute grid too coarse: {name}={n_now} gives spacing {h:.3e} mm but the integrand "
                    f"needs {name} >= {n_req} (sigma_g={sg:g} mm, sigma_I={si:g} mm)"
                )

    # -- object response -------------------------------------------------------
    def object_nodes(self, obj, u1):
        k, z1, z2 = self.k, self.geom.z1, self.geom.z2
        x_max = self.s_half + 0.5 * self.t_half
        nodes, weights, amps = [], [], []
        n = self.cfg.n_aperture
        for lo, hi, amp in obj.intervals:
            v_max = max(abs(lo), abs(hi))
            rate = k * (x_max + v_max) / z1 + k * max(abs(lo - u1), abs(hi - u1)) / z2
            panels = max(1, int(math.ceil((hi - lo) * rate / (n - 8))))
            x, w = _gl_panels(lo, hi, n, panels)
            nodes.append(x)
            weights.append(w)
            amps.append(np.full(x.shape, amp, dtype=complex))
        return np.concatenate(nodes), np.concatenate(weights), np.concatenate(amps)

    def h1(self, obj, u1, x):
        """Path-one response sum_v w H(v) F(z1; x, v) F(z2; v, u1) at source points x."""
        v, w, amp = self.object_nodes(obj, u1)
        k, z1, z2 = self.k, self.geom.z1, self.geom.z2
        coef = w * amp * self.n_z2 * np.exp(1j * k * (v - u1) ** 2 / (2 * z2)) * np.exp(1j * k * v**2 / (2 * z1))
        return self.n_z1 * np.exp(1j * k * x**2 / (2 * z1)) * chirp_sum(coef, v, x, -k / z1)

    # -- quantities -------------------------------------------------------------
    def scan(self, obj, u1, u2):
        u2 = np.atleast_1d(np.asarray(u2, dtype=float))
        self.check_resolution(obj, u1, u2)
        i2 = self.i2(u2)
        if not obj.intervals:
            return np.zeros(u2.shape, dtype=complex), 0.0, i2
        k, m = self.k, self.m2
        n = self.x1.size
        h = self.h1(obj, u1, np.concatenate([self.x1, self.x2]))
        h_x1, h_x2 = h[:n], h[n:]
        conj_h1 = np.conj(h_x1)
        coef = self.weight * conj_h1 * np.exp(1j * k * m.a * self.x2**2 / (2 * m.b))
        gamma = self.n_b * np.exp(1j * k * m.d * u2**2 / (2 * m.b)) * chirp_sum(coef, self.x2, u2, -k / m.b)
        i1 = _real_part(np.sum(self.weight * conj_h1 * h_x2), "<I1>")
        return gamma, i1, i2

    def i2(self, u2):
        u2 = np.atleast_1d(np.asarray(u2, dtype=float))
        k, m = self.k, self.m2
        coef = self.weight * np.exp(1j * k * m.a * (self.x2**2 - self.x1**2) / (2 * m.b))
        value = abs(self.n_b) ** 2 * chirp_sum(coef, self.x2 - self.x1, u2, -k / m.b)
        return _real_part(value, "<I2>")


def _trapezoid(half, n):
    x = np.linspace(-half, half, n)
    w = np.full(n, x[1] - x[0])
    w[0] = w[-1] = 0.5 * (x[1] - x[0])
    return x, w


def _object_extent(obj):
    if not obj.intervals:
        return (0.0, 0.0)
    return (min(iv[0] for iv in obj.intervals), max(iv[1] for iv in obj.intervals))
