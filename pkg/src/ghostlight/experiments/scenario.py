"""Scenario records and their TOML representation.

A config file has the sections [source], [geometry], [object], [detector],
[engine], [metrics] and an optional [sweep]; keys are the field names of the
matching record class below. Lengths are millimetres, temperature kelvin.
"""

import dataclasses
import math
from dataclasses import dataclass, field

import numpy as np

try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib

from ..correlator.config import EngineConfig
from ..errors import ConfigError, GhostlightError
from ..geometry import PathGeometry, WaveContext
from ..metrics import DENOMINATOR_MODES, QUALITY_NORMS, VisibilityConvention
from ..objects import EMPTY, double_slit, single_slit
from ..source import BlackbodySpectrumParams, GaussianSchellSource, fit_coherence_width

OBJECT_TYPES = ("double_slit", "single_slit", "empty")
SWEEP_METRICS = ("V", "Q")


@dataclass(frozen=True)
class SourceSpec:
    sigma_I: float
    sigma_g: float = None
    temperature: float = None
    wavelength: float = 7.02e-4
    kernel_mode: str = "scalar"

    def __post_init__(self):
        if (self.sigma_g is None) == (self.temperature is None):
            raise ConfigError("give exactly one of sigma_g or temperature", "source")
        if self.kernel_mode not in ("scalar", "transverse"):
            raise ConfigError(f"unknown kernel_mode {self.kernel_mode!r}", "source.kernel_mode")

    def resolved_sigma_g(self):
        if self.sigma_g is not None:
            return self.sigma_g
        return fit_coherence_width(BlackbodySpectrumParams(self.temperature, mode=self.kernel_mode))


@dataclass(frozen=True)
class GeometrySpec:
    z1: float = 10.0
    z2: float = 40.0
    l1: float = 30.0
    f: float = 10.0
    l2: float = 20.0
    lens_present: bool = True


@dataclass(frozen=True)
class ObjectSpec:
    type: str = "double_slit"
    slit_width: float = 0.01
    separation: float = 0.03
    center: float = 0.0

    def __post_init__(self):
        if self.type not in OBJECT_TYPES:
            raise ConfigError(f"object type must be one of {OBJECT_TYPES}, got {self.type!r}", "object.type")

    def build(self):
        if self.type == "double_slit":
            return double_slit(self.slit_width, self.separation)
        if self.type == "single_slit":
            return single_slit(self.slit_width, self.center)
        return EMPTY


@dataclass(frozen=True)
class DetectorSpec:
    u1_ref: float = 0.0
    u2_min: float = -0.05
    u2_max: float = 0.05
    n_points: int = 201

    def __post_init__(self):
        if not self.u2_min < self.u2_max:
            raise ConfigError("need u2_min < u2_max", "detector.u2_min")
        if self.n_points < 3:
            raise ConfigError(f"n_points must be >= 3, got {self.n_points}", "detector.n_points")

    def grid(self):
        return np.linspace(self.u2_min, self.u2_max, self.n_points)


@dataclass(frozen=True)
class MetricsSpec:
    denominator_mode: str = "intensity_product"
    quality_norm: str = "absolute"
    prominence: float = 0.1

    def __post_init__(self):
        if self.denominator_mode not in DENOMINATOR_MODES:
            raise ConfigError(f"must be one of {DENOMINATOR_MODES}", "metrics.denominator_mode")
        if self.quality_norm not in QUALITY_NORMS:
            raise ConfigError(f"must be one of {QUALITY_NORMS}", "metrics.quality_norm")
        if not 0 < self.prominence < 1:
            raise ConfigError("prominence must lie in (0, 1)", "metrics.prominence")

    @property
    def convention(self):
        return VisibilityConvention(self.denominator_mode)


@dataclass(frozen=True)
class SweepSpec:
    """Values for one parameter path, optionally repeated per series value.

    ``values`` may be given directly or as ``start``/``stop``/``num`` with
    ``spacing`` "log" or "linear".
    """

    parameter: str
    values: tuple
    metrics: tuple = SWEEP_METRICS
    series_parameter: str = None
    series_values: tuple = ()

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "metrics", tuple(self.metrics))
        object.__setattr__(self, "series_values", tuple(float(v) for v in self.series_values))
        if not values:
            raise ConfigError("sweep value list is empty", "sweep.values")
        steps = np.diff(values)
        if not (np.all(steps > 0) or np.all(steps < 0)):
            raise ConfigError("sweep values must be strictly monotone", "sweep.values")
        bad = [m for m in self.metrics if m not in SWEEP_METRICS]
        if bad or not self.metrics:
            raise ConfigError(f"metrics must be a non-empty subset of {SWEEP_METRICS}", "sweep.metrics")
        _split_path(self.parameter, "sweep.parameter")
        if self.series_parameter is not None:
            _split_path(self.series_parameter, "sweep.series_parameter")
            if not self.series_values:
                raise ConfigError("series_parameter given without series_values", "sweep.series_values")


@dataclass(frozen=True)
class Scenario:
    source: SourceSpec
    geometry: GeometrySpec = field(default_factory=GeometrySpec)
    object: ObjectSpec = field(default_factory=ObjectSpec)
    detector: DetectorSpec = field(default_factory=DetectorSpec)
    engine: EngineConfig = field(default_factory=EngineConfig)
    metrics: MetricsSpec = field(default_factory=MetricsSpec)
    sweep: SweepSpec = None
    name: str = ""

    def with_value(self, path, value):
        """Copy with one ``section.key`` replaced (e.g. ``source.sigma_g``)."""
        section, key = _split_path(path, path)
        part = getattr(self, section)
        updates = {key: value}
        if section == "source" and key == "sigma_g":
            updates["temperature"] = None
        elif section == "source" and key == "temperature":
            updates["sigma_g"] = None
        return dataclasses.replace(self, **{section: dataclasses.replace(part, **updates)})

    # physical objects, with config paths attached to failures
    def wave(self):
        return _guard("source.wavelength", WaveContext, self.source.wavelength)

    def gsm(self):
        sigma_g = _guard("source", self.source.resolved_sigma_g)
        return _guard("source", GaussianSchellSource, self.source.sigma_I, sigma_g)

    def path_geometry(self):
        g = self.geometry
        return _guard("geometry", PathGeometry, g.z1, g.z2, g.l1, g.f, g.l2, g.lens_present)

    def aperture(self):
        return _guard("object", self.object.build)


_SECTIONS = {
    "source": SourceSpec,
    "geometry": GeometrySpec,
    "object": ObjectSpec,
    "detector": DetectorSpec,
    "engine": EngineConfig,
    "metrics": MetricsSpec,
}


def _split_path(path, where):
    parts = str(path).split(".")
    if len(parts) != 2 or parts[0] not in _SECTIONS:
        raise ConfigError(f"parameter path must be '<section>.<key>', got {path!r}", where)
    section, key = parts
    names = {f.name for f in dataclasses.fields(_SECTIONS[section])}
    if key not in names:
        raise ConfigError(f"unknown key {key!r} in [{section}]", where)
    return section, key


def _guard(path, fn, *args):
    try:
        return fn(*args)
    except ConfigError:
        raise
    except GhostlightError as exc:
        exc.config_path = path
        raise


def _build(cls, table, section):
    if not isinstance(table, dict):
        raise ConfigError("expected a table", section)
    names = {f.name for f in dataclasses.fields(cls)}
    for key in table:
        if key not in names:
            raise ConfigError(f"unknown key {key!r}", f"{section}.{key}")
    try:
        return cls(**table)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc), section) from exc


def _sweep_from_table(table):
    table = dict(table)
    if "values" not in table:
        try:
            start, stop, num = table.pop("start"), table.pop("stop"), int(table.pop("num"))
        except KeyError as exc:
            raise ConfigError("give 'values' or 'start', 'stop' and 'num'", f"sweep.{exc.args[0]}") from None
        spacing = table.pop("spacing", "log")
        if spacing == "log":
            if not (start > 0 and stop > 0):
                raise ConfigError("log spacing needs positive endpoints", "sweep.start")
            table["values"] = tuple(np.geomspace(start, stop, num))
        elif spacing == "linear":
            table["values"] = tuple(np.linspace(start, stop, num))
        else:
            raise ConfigError(f"spacing must be 'log' or 'linear', got {spacing!r}", "sweep.spacing")
    return _build(SweepSpec, table, "sweep")


def scenario_from_dict(doc, name=""):
    unknown = set(doc) - set(_SECTIONS) - {"sweep", "name"}
    if unknown:
        raise ConfigError(f"unknown section(s) {sorted(unknown)}", sorted(unknown)[0])
    if "source" not in doc:
        raise ConfigError("missing [source] section", "source")
    parts = {sec: _build(cls, doc.get(sec, {}), sec) for sec, cls in _SECTIONS.items() if sec in doc}
    sweep = _sweep_from_table(doc["sweep"]) if "sweep" in doc else None
    for value in _numeric_fields(parts):
        path, number = value
        if isinstance(number, float) and not math.isfinite(number):
            raise ConfigError("value must be finite", path)
    return Scenario(**parts, sweep=sweep, name=doc.get("name", name))


def _numeric_fields(parts):
    for sec, obj in parts.items():
        for f in dataclasses.fields(obj):
            yield f"{sec}.{f.name}", getattr(obj, f.name)


def load_scenario(path):
    try:
        with open(path, "rb") as fh:
            doc = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc.strerror}", str(path)) from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"invalid TOML: {exc}", str(path)) from exc
    return scenario_from_dict(doc, name=str(path))
