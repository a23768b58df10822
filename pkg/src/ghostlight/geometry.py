"""Ray-transfer (ABCD) matrices and the two-path ghost-imaging geometry.

All lengths are millimetres. Path one runs source -> object (z1) -> D1 (z2);
path two runs source -> lens (l1) -> D2 (l2). With the lens removed path two is
plain free space of length l1 + l2, which is the ghost-interference setup.

Because the path-one response enters the cross correlation conjugated, the
effective imaging system is path two preceded by a *negative* propagation of
z1, i.e. ``free(l2) @ lens(f) @ free(l1 - z1)``.
"""

import math
from dataclasses import dataclass

from .errors import InvalidGeometryError, NotImagingError, SingularConfigurationError

IMAGING_TOL = 1e-9  # mm^-1


@dataclass(frozen=True)
class WaveContext:
    """Monochromatic wave parameters; ``wavelength`` in mm."""

    wavelength: float

    def __post_init__(self):
        if not self.wavelength > 0:
            raise InvalidGeometryError(f"wavelength must be positive, got {self.wavelength}")

    @property
    def k(self):
        return 2.0 * math.pi / self.wavelength


@dataclass(frozen=True)
class RayTransferMatrix:
    a: float
    b: float
    c: float
    d: float

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other):
        return compose(self, other)

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d)


IDENTITY = RayTransferMatrix(1.0, 0.0, 0.0, 1.0)


def free_space(L):
    if not L > 0:
        raise InvalidGeometryError(f"free-space length must be positive, got {L}")
    return RayTransferMatrix(1.0, float(L), 0.0, 1.0)


def _propagation(L):
    # signed propagation, used internally for the l1 - z1 leg which may be negative
    return RayTransferMatrix(1.0, float(L), 0.0, 1.0)


def thin_lens(f):
    if f == 0:
        raise InvalidGeometryError("thin lens focal length must be nonzero")
    return RayTransferMatrix(1.0, 0.0, -1.0 / f, 1.0)


def compose(later, earlier):
    """Matrix product ``later @ earlier`` (``earlier`` acts on the ray first)."""
    return RayTransferMatrix(
        later.a * earlier.a + later.b * earlier.c,
        later.a * earlier.b + later.b * earlier.d,
        later.c * earlier.a + later.d * earlier.c,
        later.c * earlier.b + later.d * earlier.d,
    )


def path2_matrix(l1, f, l2, lens_present=True):
    if not lens_present:
        return free_space(l1 + l2)
    return compose(free_space(l2), compose(thin_lens(f), free_space(l1)))


def imaging_residual(l1, z1, l2, f):
    """Residual of the ghost thin-lens equation 1/(l1 - z1) + 1/l2 = 1/f."""
    if l1 == z1:
        raise SingularConfigurationError("l1 == z1: the effective object distance vanishes")
    if not l2 > 0:
        raise InvalidGeometryError(f"l2 must be positive, got {l2}")
    if f == 0:
        raise InvalidGeometryError("f must be nonzero")
    return 1.0 / (l1 - z1) + 1.0 / l2 - 1.0 / f


def effective_image_matrix(z1, l1, f, l2):
    if l1 == z1:
        raise SingularConfigurationError("l1 == z1: the effective object distance vanishes")
    return compose(free_space(l2), compose(thin_lens(f), _propagation(l1 - z1)))


def magnification(z1, l1, f, l2, tol=IMAGING_TOL):
    """Signed ghost-image magnification; negative means an inverted image."""
    residual = imaging_residual(l1, z1, l2, f)
    if abs(residual) > tol:
        raise NotImagingError(
            f"not an imaging configuration: residual {residual:.3e} mm^-1 exceeds {tol:.1e}"
        )
    return effective_image_matrix(z1, l1, f, l2).a


def imaging_residual_lens_in_path1(S1, S2, S3, f):
    """Residual of 1/(S1 - S2) + 1/S3 = 1/f for the lens placed in path one.

    S1: source to lens, S2: source to D2, S3: lens to object. The entangled-photon
    version of the same condition has +S2 in place of -S2.
    """
    if S1 == S2 or S3 == 0 or f == 0:
        raise SingularConfigurationError(
            f"singular lens-in-path-one configuration (S1={S1}, S2={S2}, S3={S3}, f={f})"
        )
    return 1.0 / (S1 - S2) + 1.0 / S3 - 1.0 / f


@dataclass(frozen=True)
class PathGeometry:
    z1: float
    z2: float
    l1: float
    f: float
    l2: float
    lens_present: bool = True

    def __post_init__(self):
        for name in ("z1", "z2", "l1", "l2"):
            value = getattr(self, name)
            if not value > 0:
                raise InvalidGeometryError(f"{name} must be positive, got {value}")
        if self.lens_present and self.f == 0:
            raise InvalidGeometryError("f must be nonzero when the lens is present")

    def path2(self):
        return path2_matrix(self.l1, self.f, self.l2, self.lens_present)

    def effective(self):
        """Path two preceded by a backwards propagation over z1."""
        return compose(self.path2(), _propagation(-self.z1))

    def is_imaging(self, tol=IMAGING_TOL):
        if not self.lens_present or self.l1 == self.z1:
            return False
        return abs(imaging_residual(self.l1, self.z1, self.l2, self.f)) <= tol

    def magnification(self, tol=IMAGING_TOL):
        if not self.lens_present:
            raise NotImagingError("lens removed: ghost-interference mode has no image")
        return magnification(self.z1, self.l1, self.f, self.l2, tol)
