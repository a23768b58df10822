"""Scenario, sweep and dual-engine verification drivers."""

import dataclasses
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .._kernels import worker_count
from ..correlator import ghost_image_scan
from ..errors import GhostlightError
from ..metrics import peak_positions, quality, visibility


@dataclass(frozen=True)
class ScenarioResult:
    scenario: object
    scan: object
    V: float
    Q: float = None  # None when the geometry does not image
    quality_report: object = None
    peaks: tuple = ()


def compute_scan(s, engine=None):
    cfg = s.engine if engine is None else dataclasses.replace(s.engine, engine=engine)
    return ghost_image_scan(
        s.detector.u1_ref, s.detector.grid(), s.path_geometry(), s.wave(), s.gsm(), s.aperture(), cfg
    )


def run_scenario(s, engine=None):
    scan = compute_scan(s, engine)
    V = visibility(scan, s.metrics.convention)
    geom = s.path_geometry()
    report = None
    if geom.is_imaging():
        report = quality(scan, s.aperture(), geom.magnification(), s.metrics.quality_norm)
    peaks = tuple(peak_positions(scan, s.metrics.prominence))
    return ScenarioResult(s, scan, V, report.Q if report else None, report, peaks)


@dataclass(frozen=True)
class SweepRow:
    value: float
    V: float = None
    Q: float = None
    error: str = ""


def _sweep_row(s, parameter, value, metrics):
    try:
        result = run_scenario(s.with_value(parameter, value))
    except GhostlightError as exc:
        return SweepRow(value, error=f"{type(exc).__name__}: {exc}")
    return SweepRow(
        value,
        V=result.V if "V" in metrics else None,
        Q=result.Q if "Q" in metrics else None,
    )


def _map_ordered(fn, items):
    workers = min(worker_count(), len(items))
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))  # map preserves input order


def run_sweep(s, sweep=None):
    """One row per sweep value, in sweep order; row failures land in ``error``."""
    sweep = sweep or s.sweep
    if sweep is None:
        raise ValueError("scenario has no [sweep] section")
    return _map_ordered(lambda v: _sweep_row(s, sweep.parameter, v, sweep.metrics), list(sweep.values))


def run_series(s, sweep=None):
    """Sweeps repeated for each series value; returns ``{series_value: rows}``."""
    sweep = sweep or s.sweep
    if sweep is None:
        raise ValueError("scenario has no [sweep] section")
    if sweep.series_parameter is None:
        return {None: run_sweep(s, sweep)}
    return {
        value: run_sweep(s.with_value(sweep.series_parameter, value), sweep) for value in sweep.series_values
    }


def relative_deviation(a, b):
    """max |a - b| / max |b|; zero when both are identically zero."""
    a = np.atleast_1d(np.asarray(a))
    b = np.atleast_1d(np.asarray(b))
    scale = np.max(np.abs(b), initial=0.0)
    diff = np.max(np.abs(a - b), initial=0.0)
    if scale == 0:
        return 0.0 if diff == 0 else float("inf")
    return float(diff / scale)


@dataclass(frozen=True)
class DeviationReport:
    gamma: float
    I1: float
    I2: float
    rtol: float

    @property
    def max_deviation(self):
        return max(self.gamma, self.I1, self.I2)

    @property
    def passed(self):
        return self.max_deviation <= self.rtol


def compare_scans(a, b, rtol):
    return DeviationReport(
        relative_deviation(a.gamma, b.gamma),
        relative_deviation(a.I1_ref, b.I1_ref),
        relative_deviation(a.I2, b.I2),
        rtol,
    )


def verify(s, rtol=None):
    """Reduced vs brute engine on the scenario's grid.

    The brute engine raises BruteResolutionError when its grids cannot resolve
    the scenario; that refusal is passed through unchanged.
    """
    brute = compute_scan(s, "brute")
    reduced = compute_scan(s, "reduced")
    return compare_scans(reduced, brute, s.engine.rtol if rtol is None else rtol)
