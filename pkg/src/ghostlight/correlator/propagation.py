"""Paraxial propagation kernels (Fresnel and Collins)."""

import numpy as np

from ..errors import DegenerateKernelError, InvalidGeometryError

DEGENERATE_B = 1e-12  # mm


def fresnel_kernel(ctx, L, x, y):
    """(i lambda L)^-1/2 exp(i k L) exp(i k (x - y)^2 / 2L)."""
    if not L > 0:
        raise InvalidGeometryError(f"propagation distance must be positive, got {L}")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    k = ctx.k
    out = (1j * ctx.wavelength * L) ** -0.5 * np.exp(1j * k * L) * np.exp(1j * k * (x - y) ** 2 / (2.0 * L))
    return complex(out) if out.ndim == 0 else out


def collins_kernel(ctx, m, x, u, axial_length=0.0):
    """Collins kernel of an ABCD system.

    (i lambda b)^-1/2 exp(i k axial_length) exp(i k (a x^2 - 2 x u + d u^2) / 2b).
    ``axial_length`` carries the on-axis phase that the matrix itself does not
    know about; with ``m = free_space(L)`` and ``axial_length = L`` this is
    exactly :func:`fresnel_kernel`.
    """
    if abs(m.b) < DEGENERATE_B:
        raise DegenerateKernelError(
            "b = 0: the system images its input plane and the Collins kernel is singular; "
            "use the effective_image_matrix formulation instead"
        )
    x = np.asarray(x, dtype=float)
    u = np.asarray(u, dtype=float)
    k = ctx.k
    phase = k * (m.a * x**2 - 2.0 * x * u + m.d * u**2) / (2.0 * m.b)
    out = (1j * ctx.wavelength * m.b) ** -0.5 * np.exp(1j * k * axial_length) * np.exp(1j * phase)
    return complex(out) if out.ndim == 0 else out


def collins_norm(ctx, m):
    return (1j * ctx.wavelength * m.b + 0j) ** -0.5
