"""Image metrics computed from a :class:`CorrelationScan`.

Every metric is built from peak-normalized quantities, so none depends on the
overall kernel normalization.
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid
from scipy.signal import find_peaks

from .errors import InsufficientFringesError, UndefinedMetricError
from .objects import transmission

DENOMINATOR_MODES = ("intensity_product", "intensity_product_plus_correlation")
QUALITY_NORMS = ("absolute", "squared")
PLATEAU_TOL = 1e-4  # relative to the apex


@dataclass(frozen=True)
class VisibilityConvention:
    """Denominator of the visibility: max <I1><I2>, or max (<I1><I2> + |Γ|^2)."""

    denominator_mode: str = "intensity_product"

    def __post_init__(self):
        if self.denominator_mode not in DENOMINATOR_MODES:
            raise ValueError(f"denominator_mode must be one of {DENOMINATOR_MODES}, got {self.denominator_mode!r}")


def visibility(scan, conv=None):
    """V = max |Γ|^2 / max(denominator) over the scan grid."""
    conv = conv or VisibilityConvention()
    if scan.u2_grid.size == 0:
        raise UndefinedMetricError("empty scan")
    gsq = scan.gamma_sq
    denom = scan.I1_ref * scan.I2
    if conv.denominator_mode == "intensity_product_plus_correlation":
        denom = denom + gsq
    peak = float(np.max(denom))
    if not peak > 0:
        raise UndefinedMetricError("visibility undefined: intensities vanish over the whole scan")
    return float(np.max(gsq)) / peak


@dataclass(frozen=True)
class QualityReport:
    Q: float
    grid: np.ndarray
    normalized_image: np.ndarray
    normalized_ideal: np.ndarray
    norm: str = "absolute"


def quality(scan, ideal, mag, norm="absolute"):
    """Deviation of the normalized correlation image from the magnified object.

    ``norm="absolute"`` integrates |image - ideal|; ``norm="squared"`` integrates
    its square. Both are divided by the integral of ideal^2 (trapezoid rule on
    the scan grid).
    """
    if norm not in QUALITY_NORMS:
        raise ValueError(f"norm must be one of {QUALITY_NORMS}, got {norm!r}")
    if not np.isfinite(mag) or mag == 0:
        raise UndefinedMetricError(f"quality needs a finite nonzero magnification, got {mag}")
    u = scan.u2_grid
    target = np.abs(transmission(ideal, u / mag)) ** 2
    target = np.atleast_1d(target).astype(float)
    if target.max(initial=0.0) <= 0:
        raise UndefinedMetricError("ideal image has zero measure on the scan grid")
    target = target / target.max()
    gsq = scan.gamma_sq
    if gsq.max(initial=0.0) <= 0:
        raise UndefinedMetricError("correlation image is identically zero")
    image = gsq / gsq.max()
    diff = np.abs(image - target)
    if norm == "squared":
        diff = diff**2
    Q = trapezoid(diff, u) / trapezoid(target**2, u)
    return QualityReport(float(Q), u, image, target, norm)


def _refine(u, y, i):
    apex = y[i]
    lo = i
    while lo > 0 and y[lo - 1] >= apex * (1 - PLATEAU_TOL):
        lo -= 1
    hi = i
    while hi < y.size - 1 and y[hi + 1] >= apex * (1 - PLATEAU_TOL):
        hi += 1
    if hi - lo >= 2:
        # flat top: the apex sample is arbitrary, the centre is not
        return 0.5 * (u[lo] + u[hi])
    if 0 < i < y.size - 1:
        y0, y1, y2 = y[i - 1], y[i], y[i + 1]
        curv = y0 - 2 * y1 + y2
        if curv < 0:
            shift = 0.5 * (y0 - y2) / curv
            return u[i] + shift * (u[i + 1] - u[i - 1]) / 2
    return u[i]


def peak_positions(scan, prominence=0.1):
    """Positions of the local maxima of the normalized |Γ|^2 image."""
    y = scan.gamma_sq_norm
    if y.size < 3 or y.max(initial=0.0) <= 0:
        return []
    idx, _ = find_peaks(y, prominence=prominence)
    return [float(_refine(scan.u2_grid, y, i)) for i in idx]


@dataclass(frozen=True)
class FringeEstimate:
    period: float
    cv: float
    positions: tuple

    def __float__(self):
        return self.period


def fringe_period(scan, prominence=0.1, min_peaks=5):
    """Mean spacing between consecutive fringe maxima and its coefficient of variation."""
    peaks = peak_positions(scan, prominence)
    if len(peaks) < min_peaks:
        raise InsufficientFringesError(f"found {len(peaks)} fringe peaks, need at least {min_peaks}")
    spacing = np.diff(peaks)
    period = float(spacing.mean())
    return FringeEstimate(period, float(spacing.std() / period), tuple(peaks))
