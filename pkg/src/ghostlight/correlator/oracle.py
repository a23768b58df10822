"""Fourth-order moment oracle for the coincidence rate.

G2(u1, u2) = <E1* E2* E1 E2> is summed directly over four source coordinates
with the thermal (Gaussian) moment factorization

    <E*(x1) E*(x2) E(x3) E(x4)> = W(x1, x3) W(x2, x4) + W(x1, x4) W(x2, x3).

Nothing here uses the closed-form Gaussian reduction: the path responses are
plain quadrature sums, so agreement with I1*I2 + |Γ|^2 is an independent check.
Cost grows as n^4; keep ``n`` below ~100.
"""

import numpy as np

from .._kernels import moment4_sum
from .._quadrature import gauss_legendre
from ..source import gsm_correlation
from .propagation import collins_kernel, fresnel_kernel


def path1_response(geom, ctx, obj, u1, x, n_per_interval=400):
    """h1(x) = int H(v) F(z1; x, v) F(z2; v, u1) dv by composite Gauss-Legendre."""
    x = np.asarray(x, dtype=float)
    nodes, weights = gauss_legendre(n_per_interval)
    out = np.zeros(x.shape, dtype=complex)
    for lo, hi, amp in obj.intervals:
        half, mid = 0.5 * (hi - lo), 0.5 * (hi + lo)
        v = mid + half * nodes
        w = half * weights * amp * fresnel_kernel(ctx, geom.z2, v, u1)
        out += fresnel_kernel(ctx, geom.z1, x[:, None], v[None, :]) @ w
    return out


def coincidence_oracle(u1, u2_points, geom, ctx, src, obj, n=64, extent=8.0):
    """G2 at each u2 by direct 4-D trapezoid quadrature over ±extent·sigma_I."""
    x, h = np.linspace(-extent * src.sigma_I, extent * src.sigma_I, n, retstep=True)
    q = np.full(n, h)
    q[0] = q[-1] = 0.5 * h
    S = gsm_correlation(src, x[:, None], x[None, :]).astype(complex)
    h1 = path1_response(geom, ctx, obj, u1, x)
    w1 = np.conj(h1) * q
    w3 = h1 * q
    m2 = geom.path2()
    axial = geom.l1 + geom.l2
    out = []
    for u2 in np.atleast_1d(u2_points):
        h2 = collins_kernel(ctx, m2, x, u2, axial_length=axial)
        out.append(moment4_sum(w1, np.conj(h2) * q, w3, h2 * q, S).real)
    return np.array(out)
