"""Piecewise-constant object transmission functions H(v)."""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidApertureError


@dataclass(frozen=True)
class PiecewiseAperture:
    """Disjoint half-open intervals [lo, hi) with complex amplitudes."""

    intervals: tuple = ()

    def __post_init__(self):
        cleaned = []
        for item in self.intervals:
            lo, hi, amp = item
            lo, hi, amp = float(lo), float(hi), complex(amp)
            if not lo < hi:
                raise InvalidApertureError(f"empty or reversed interval [{lo}, {hi})")
            cleaned.append((lo, hi, amp))
        cleaned.sort(key=lambda iv: iv[0])
        for (_, hi0, _), (lo1, _, _) in zip(cleaned, cleaned[1:]):
            if lo1 < hi0:
                raise InvalidApertureError(f"overlapping intervals at {lo1}")
        object.__setattr__(self, "intervals", tuple(cleaned))

    def __len__(self):
        return len(self.intervals)

    @property
    def measure(self):
        return sum(hi - lo for lo, hi, _ in self.intervals)

    def mirrored(self):
        return PiecewiseAperture(tuple((-hi, -lo, amp) for lo, hi, amp in self.intervals))


def double_slit(slit_width, separation):
    if not 0 < slit_width < separation:
        raise InvalidApertureError(
            f"double slit needs 0 < width < separation (width={slit_width}, separation={separation})"
        )
    c, h = 0.5 * separation, 0.5 * slit_width
    return PiecewiseAperture(((-c - h, -c + h, 1.0), (c - h, c + h, 1.0)))


def single_slit(slit_width, center=0.0):
    if not slit_width > 0:
        raise InvalidApertureError(f"slit width must be positive, got {slit_width}")
    return PiecewiseAperture(((center - 0.5 * slit_width, center + 0.5 * slit_width, 1.0),))


EMPTY = PiecewiseAperture(())


def transmission(ap, v):
    v = np.asarray(v, dtype=float)
    out = np.zeros(v.shape, dtype=complex)
    for lo, hi, amp in ap.intervals:
        out[(v >= lo) & (v < hi)] = amp
    return out if out.ndim else complex(out)


def support_intervals(ap):
    return list(ap.intervals)
