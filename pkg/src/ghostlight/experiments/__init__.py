from .presets import PRESETS, SIGMA_G_SWEEP, preset
from .runner import (
    DeviationReport,
    ScenarioResult,
    SweepRow,
    compare_scans,
    compute_scan,
    relative_deviation,
    run_scenario,
    run_series,
    run_sweep,
    verify,
)
from .scenario import (
    DetectorSpec,
    GeometrySpec,
    MetricsSpec,
    ObjectSpec,
    Scenario,
    SourceSpec,
    SweepSpec,
    load_scenario,
    scenario_from_dict,
)

__all__ = [
    "PRESETS",
    "SIGMA_G_SWEEP",
    "DetectorSpec",
    "DeviationReport",
    "GeometrySpec",
    "MetricsSpec",
    "ObjectSpec",
    "Scenario",
    "ScenarioResult",
    "SourceSpec",
    "SweepRow",
    "SweepSpec",
    "compare_scans",
    "compute_scan",
    "load_scenario",
    "preset",
    "relative_deviation",
    "run_scenario",
    "run_series",
    "run_sweep",
    "scenario_from_dict",
    "verify",
]
