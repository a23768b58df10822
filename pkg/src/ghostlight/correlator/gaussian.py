"""Closed-form complex Gaussian integrals in one or two dimensions.

    int exp(-x^T M x + b^T x + c0) dx = pi^(n/2) det(M)^(-1/2) exp(b^T M^-1 b / 4 + c0)

valid whenever Re(M) is positive definite. det(M)^(-1/2) is the analytic
continuation from real M: since every eigenvalue of M has positive real part
(they lie in the numerical range of M), it equals the product of principal
square roots of the eigenvalues. ``b`` and ``c0`` may carry leading batch
dimensions; ``M`` is shared across the batch.
"""

from dataclasses import dataclass

import numpy as np

from ..errors import QuadraticFormDomainError

SYMMETRY_TOL = 1e-12


@dataclass(frozen=True)
class ComplexQuadraticForm:
    """exp(-x^T M x + b^T x + c0) with M complex symmetric, Re(M) positive definite."""

    M: np.ndarray
    b: np.ndarray
    c0: object = 0.0

    def __post_init__(self):
        M = np.atleast_2d(np.asarray(self.M, dtype=np.complex128))
        n = M.shape[0]
        if M.shape != (n, n) or n not in (1, 2):
            raise QuadraticFormDomainError(f"M must be 1x1 or 2x2, got shape {M.shape}")
        b = np.asarray(self.b, dtype=np.complex128)
        if b.ndim == 0:
            b = b.reshape(1)
        if b.shape[-1] != n:
            raise QuadraticFormDomainError(f"b must end in dimension {n}, got shape {b.shape}")
        scale = np.max(np.abs(M))
        if n == 2 and abs(M[0, 1] - M[1, 0]) > SYMMETRY_TOL * scale:
            raise QuadraticFormDomainError("M is not symmetric")
        R = M.real
        if not (R[0, 0] > 0 and (n == 1 or R[0, 0] * R[1, 1] - R[0, 1] * R[1, 0] > 0)):
            raise QuadraticFormDomainError("real part of M is not positive definite")
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c0", np.asarray(self.c0, dtype=np.complex128))

    @property
    def n(self):
        return self.M.shape[0]


def sqrt_det(M):
    """det(M)^(1/2) on the branch continuous from real positive-definite M."""
    if M.shape[0] == 1:
        return np.sqrt(M[0, 0])
    tr = M[0, 0] + M[1, 1]
    det = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
    disc = np.sqrt(tr * tr - 4.0 * det)
    big = 0.5 * (tr + disc) if abs(tr + disc) >= abs(tr - disc) else 0.5 * (tr - disc)
    small = det / big
    return np.sqrt(big) * np.sqrt(small)


def gaussian_exponent(q):
    """b^T M^-1 b / 4 + c0, batched over the leading dimensions of ``q.b``."""
    M, b = q.M, q.b
    if q.n == 1:
        quad = b[..., 0] ** 2 / M[0, 0]
    else:
        det = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
        b0, b1 = b[..., 0], b[..., 1]
        quad = (M[1, 1] * b0 * b0 - 2.0 * M[0, 1] * b0 * b1 + M[0, 0] * b1 * b1) / det
    return 0.25 * quad + q.c0


def gaussian_prefactor(q):
    return np.pi ** (q.n / 2.0) / sqrt_det(q.M)


def gaussian_integral(q):
    value = gaussian_prefactor(q) * np.exp(gaussian_exponent(q))
    return complex(value) if np.ndim(value) == 0 else value
