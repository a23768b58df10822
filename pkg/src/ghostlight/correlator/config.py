from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigError

ENGINES = ("reduced", "brute")


@dataclass(frozen=True)
class EngineConfig:
    """Numerical settings shared by both correlator engines.

    n_aperture
        Gauss-Legendre nodes per aperture panel; intervals are split into as
        many panels as the integrand's length scales require.
    n_source, n_diff
        Brute engine trapezoid points along s = (x1 + x2)/2 and t = x1 - x2.
        ``n_diff`` defaults to ``n_source``.
    source_extent, diff_extent
        Brute grid half-widths in units of sigma_I (for s) and sigma_g (for t).
    """

    engine: str = "reduced"
    n_aperture: int = 64
    n_source: int = 257
    n_diff: int = None
    source_extent: float = 4.0
    diff_extent: float = 6.0
    rtol: float = 1e-3

    def __post_init__(self):
        if self.engine not in ENGINES:
            raise ConfigError(f"engine must be one of {ENGINES}, got {self.engine!r}", "engine.engine")
        if self.n_aperture < 16:
            raise ConfigError(f"n_aperture must be >= 16, got {self.n_aperture}", "engine.n_aperture")
        if self.n_source < 64:
            raise ConfigError(f"n_source must be >= 64, got {self.n_source}", "engine.n_source")
        if self.n_diff is not None and self.n_diff < 9:
            raise ConfigError(f"n_diff must be >= 9, got {self.n_diff}", "engine.n_diff")
        if self.source_extent < 3 or self.diff_extent < 3:
            raise ConfigError("grid extents must be >= 3 widths", "engine.source_extent")
        if not self.rtol > 0:
            raise ConfigError(f"rtol must be positive, got {self.rtol}", "engine.rtol")

    @property
    def t_points(self):
        return self.n_source if self.n_diff is None else self.n_diff


@dataclass(frozen=True)
class CorrelationScan:
    """Detector-grid results at a fixed path-one detector position ``u1_ref``."""

    u1_ref: float
    u2_grid: np.ndarray
    gamma: np.ndarray
    I1_ref: float
    I2: np.ndarray
    g2: np.ndarray = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "u2_grid", np.asarray(self.u2_grid, dtype=float))
        object.__setattr__(self, "gamma", np.asarray(self.gamma, dtype=complex))
        object.__setattr__(self, "I2", np.asarray(self.I2, dtype=float))
        if self.g2 is None:
            object.__setattr__(self, "g2", self.I1_ref * self.I2 + self.gamma_sq)

    @property
    def gamma_sq(self):
        return self.gamma.real**2 + self.gamma.imag**2

    @property
    def gamma_sq_norm(self):
        peak = self.gamma_sq.max(initial=0.0)
        if peak == 0:
            return np.zeros_like(self.gamma_sq)
        return self.gamma_sq / peak

    def scaled(self, gamma_factor=1.0, intensity_factor=1.0):
        """Copy with Γ and both intensities rescaled (for invariance checks)."""
        return CorrelationScan(
            self.u1_ref,
            self.u2_grid,
            self.gamma * gamma_factor,
            self.I1_ref * intensity_factor,
            self.I2 * intensity_factor,
        )
