"""Second-order correlation of thermal light through the two-path setup.

Two interchangeable engines evaluate the same quantities:

* ``reduced``: source integrals in closed form, object integral by adaptive
  Gauss-Legendre. Fast and accurate for any coherence width.
* ``brute``: explicit source quadrature; an independent cross-check that
  refuses grids too coarse for the requested parameters.
"""

import numpy as np

from .brute import BruteModel
from .config import ENGINES, CorrelationScan, EngineConfig
from .gaussian import ComplexQuadraticForm, gaussian_integral, sqrt_det
from .propagation import collins_kernel, fresnel_kernel
from .reduced import ReducedModel, aperture_nodes, gamma_scan, mean_intensity_1, reduced_density

DEFAULT_CONFIG = EngineConfig()


def _scan_arrays(u1, u2, geom, ctx, src, obj, cfg):
    """Γ(u1, u2), <I(u1)> and <I(u2)> over the u2 array on the chosen engine."""
    cfg = cfg or DEFAULT_CONFIG
    u2 = np.atleast_1d(np.asarray(u2, dtype=float))
    if cfg.engine == "brute":
        return BruteModel(geom, ctx, src, cfg).scan(obj, u1, u2)
    model = ReducedModel(geom, ctx, src)
    i2 = model.i2(u2)
    if not obj.intervals:
        return np.zeros(u2.shape, dtype=complex), 0.0, i2
    # Γ and <I1> share nodes so the discrete Cauchy-Schwarz bound is exact
    nodes = aperture_nodes(obj, cfg.n_aperture, reduced_density(model, obj, u1, u2))
    gamma = gamma_scan(model, obj, u1, u2, cfg.n_aperture, nodes=nodes)
    i1 = mean_intensity_1(model, obj, u1, cfg.n_aperture, nodes=nodes)
    return gamma, i1, i2


def cross_correlation(u1, u2, geom, ctx, src, obj, cfg=None):
    gamma, _, _ = _scan_arrays(u1, u2, geom, ctx, src, obj, cfg)
    return complex(gamma[0]) if np.ndim(u2) == 0 else gamma


def mean_intensity_path1(u1, geom, ctx, src, obj, cfg=None):
    _, i1, _ = _scan_arrays(u1, 0.0, geom, ctx, src, obj, cfg)
    return float(i1)


def mean_intensity_path2(u2, geom, ctx, src, obj=None, cfg=None):
    """<I(u2)>; the object sits in path one, so ``obj`` is accepted but unused."""
    cfg = cfg or DEFAULT_CONFIG
    u2a = np.atleast_1d(np.asarray(u2, dtype=float))
    if cfg.engine == "brute":
        from ..objects import EMPTY

        model = BruteModel(geom, ctx, src, cfg)
        model.check_resolution(EMPTY, 0.0, u2a)
        value = model.i2(u2a)
    else:
        value = ReducedModel(geom, ctx, src).i2(u2a)
    return float(value[0]) if np.ndim(u2) == 0 else value


def coincidence_rate(u1, u2, geom, ctx, src, obj, cfg=None):
    gamma, i1, i2 = _scan_arrays(u1, u2, geom, ctx, src, obj, cfg)
    g2 = i1 * i2 + np.abs(gamma) ** 2
    return float(g2[0]) if np.ndim(u2) == 0 else g2


def ghost_image_scan(u1_ref, u2_grid, geom, ctx, src, obj, cfg=None):
    """Γ, <I2> and G2 over ``u2_grid`` with <I1> evaluated once at ``u1_ref``."""
    u2_grid = np.asarray(u2_grid, dtype=float)
    gamma, i1, i2 = _scan_arrays(u1_ref, u2_grid, geom, ctx, src, obj, cfg)
    return CorrelationScan(float(u1_ref), u2_grid, gamma, float(i1), i2)


__all__ = [
    "ENGINES",
    "ComplexQuadraticForm",
    "CorrelationScan",
    "EngineConfig",
    "coincidence_rate",
    "collins_kernel",
    "cross_correlation",
    "fresnel_kernel",
    "gaussian_integral",
    "ghost_image_scan",
    "mean_intensity_path1",
    "mean_intensity_path2",
    "sqrt_det",
]
