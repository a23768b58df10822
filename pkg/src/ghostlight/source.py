"""Thermal source correlation models.

The simulation uses the Gaussian Schell-model (GSM) cross-spectral density

    W(x1, x2) = exp(-(x1**2 + x2**2) / (4 sigma_I**2)) * exp(-(x1 - x2)**2 / (2 sigma_g**2))

with the overall intensity constant dropped (every metric is scale invariant).

The blackbody kernel is there to tie ``sigma_g`` to a temperature: the Planck
spectrum weighted plane-wave sum is quasi-Gaussian in the separation and its
fitted width shrinks as 1/T.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import constants

from ._quadrature import gauss_legendre
from .errors import AccuracyError, FitError, InvalidGeometryError

WIEN_X = 2.821439372122079  # root of 3(1 - exp(-x)) = x, peak of x^3 / (e^x - 1)
TAIL_TOL = 1e-9


@dataclass(frozen=True)
class GaussianSchellSource:
    sigma_I: float
    sigma_g: float

    def __post_init__(self):
        if not (self.sigma_I > 0 and self.sigma_g > 0):
            raise InvalidGeometryError(
                f"source widths must be positive (sigma_I={self.sigma_I}, sigma_g={self.sigma_g})"
            )


def gsm_correlation(src, x1, x2):
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    envelope = np.exp(-(x1**2 + x2**2) / (4.0 * src.sigma_I**2))
    coherence = np.exp(-((x1 - x2) ** 2) / (2.0 * src.sigma_g**2))
    out = envelope * coherence
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class BlackbodySpectrumParams:
    """Planck-spectrum integration settings.

    Wavenumbers ``k_min``/``k_max`` are in rad/mm; physical constants in SI.
    ``mode`` selects how the polarization tensor of the plane-wave sum is
    reduced to one transverse dimension:

    ``"scalar"``
        drop the tensor, isotropic angular average -> sin(kr)/(kr)
    ``"transverse"``
        keep (delta_ij - k_i k_j / k^2) for a field component perpendicular to
        the separation -> j0(kr) - j1(kr)/(kr)
    """

    temperature: float
    k_min: float = 0.0
    k_max: float = None
    n_quad: int = 2048
    mode: str = "scalar"
    hbar: float = constants.hbar
    k_B: float = constants.k
    c: float = constants.c

    def __post_init__(self):
        if not self.temperature > 0:
            raise InvalidGeometryError(f"temperature must be positive, got {self.temperature}")
        if self.k_max is None:
            object.__setattr__(self, "k_max", 20.0 * self.k_peak)
        if not (0 <= self.k_min < self.k_max):
            raise InvalidGeometryError(f"need 0 <= k_min < k_max, got {self.k_min}, {self.k_max}")
        if self.n_quad < 64:
            raise InvalidGeometryError(f"n_quad must be >= 64, got {self.n_quad}")
        if self.mode not in ("scalar", "transverse"):
            raise InvalidGeometryError(f"unknown kernel mode {self.mode!r}")

    @property
    def thermal_length(self):
        """hbar c / (k_B T) in mm; k * thermal_length is the Planck variable."""
        return self.hbar * self.c / (self.k_B * self.temperature) * 1e3

    @property
    def k_peak(self):
        return WIEN_X / self.thermal_length


def _planck_tail(x):
    # int_x^inf t^3 / (e^t - 1) dt as a series in exp(-n x)
    n = np.arange(1, 200)
    return float(np.sum(np.exp(-n * x) * (x**3 / n + 3 * x**2 / n**2 + 6 * x / n**3 + 6 / n**4)))


def _check_cutoffs(params):
    if params.k_max < 10.0 * params.k_peak:
        raise AccuracyError(
            f"k_max={params.k_max:.4g} rad/mm is below 10 k_peak ({10 * params.k_peak:.4g})"
        )
    total = math.pi**4 / 15.0
    x_lo = params.k_min * params.thermal_length
    x_hi = params.k_max * params.thermal_length
    lost = _planck_tail(x_hi) + x_lo**3 / 3.0
    if lost > TAIL_TOL * total:
        raise AccuracyError(
            f"spectral cutoffs discard {lost / total:.2e} of the Planck integral (limit {TAIL_TOL:g})"
        )


def _angular_factor(kr, mode):
    kr = np.asarray(kr, dtype=float)
    if mode == "scalar":
        return np.sinc(kr / np.pi)
    small = kr < 1e-3
    safe = np.where(small, 1.0, kr)
    j0 = np.sin(safe) / safe
    j1 = np.sin(safe) / safe**2 - np.cos(safe) / safe
    series = 2.0 / 3.0 - kr**2 / 15.0 + kr**4 / 420.0
    return np.where(small, series, j0 - j1 / safe)


def blackbody_kernel(params, dx):
    """Unnormalised separation kernel of Planck radiation (even, peaked at 0).

    K(dx) = int k^3 / (exp(k hbar c / k_B T) - 1) * A(k |dx|) dk over [k_min, k_max],
    evaluated by Gauss-Legendre with ``params.n_quad`` nodes.
    """
    _check_cutoffs(params)
    nodes, weights = gauss_legendre(params.n_quad)
    half = 0.5 * (params.k_max - params.k_min)
    k = half * nodes + 0.5 * (params.k_max + params.k_min)
    w = half * weights
    spectrum = k**3 / np.expm1(k * params.thermal_length) * w
    dx = np.asarray(dx, dtype=float)
    r = np.abs(dx).reshape(-1)
    out = _angular_factor(np.outer(r, k), params.mode) @ spectrum
    return out.reshape(dx.shape) if dx.ndim else float(out[0])


@dataclass(frozen=True)
class CoherenceFit:
    sigma_g: float
    rms: float
    dx: np.ndarray = field(repr=False)
    normalized: np.ndarray = field(repr=False)
    window: int = 0  # number of samples (from dx = 0) inside the >= 0.1 region


def coherence_fit(params, n_samples=601, threshold=0.1):
    """Fit exp(-dx^2 / 2 sigma^2) to the peak-normalised kernel.

    Least squares on log values over the central region where the kernel stays
    above ``threshold``; returns the width and the linear-scale RMS residual.
    """
    span = 3.0 * params.thermal_length
    for _ in range(6):
        dx = np.linspace(0.0, span, n_samples)
        kern = blackbody_kernel(params, dx)
        if not kern[0] > 0:
            raise FitError("kernel is not positive at zero separation", {"K0": kern[0]})
        normalized = kern / kern[0]
        below = np.flatnonzero(normalized < threshold)
        if below.size:
            break
        span *= 2.0
    else:
        raise FitError("kernel never drops below the fit threshold", {"span_mm": span})

    window = int(below[0])
    if window < 4:
        raise FitError("fit window too narrow", {"samples": window, "span_mm": span})
    x2 = dx[1:window] ** 2
    logs = np.log(normalized[1:window])
    curvature = -np.dot(x2, logs) / np.dot(x2, x2)
    if not (np.isfinite(curvature) and curvature > 0):
        raise FitError("Gaussian fit diverged", {"curvature": curvature, "samples": window})
    sigma = math.sqrt(0.5 / curvature)
    model = np.exp(-dx[:window] ** 2 / (2.0 * sigma**2))
    rms = float(np.sqrt(np.mean((normalized[:window] - model) ** 2)))
    return CoherenceFit(sigma, rms, dx, normalized, window)


def fit_coherence_width(params):
    return coherence_fit(params).sigma_g
