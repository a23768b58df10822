"""Named scenarios for the standard parameter studies.

Shared setup: double slit of width 0.01 mm and separation 0.03 mm, wavelength
7.02e-4 mm, z1 = 10, z2 = 40, f = 10, l1 = 30 mm. Detector window +-0.05 mm.
"""

import numpy as np

from ..correlator.config import EngineConfig
from ..errors import ConfigError
from .scenario import DetectorSpec, GeometrySpec, ObjectSpec, Scenario, SourceSpec, SweepSpec

WAVELENGTH = 7.02e-4
SIGMA_G_SWEEP = tuple(np.geomspace(1e-5, 3e-3, 12))


def _scenario(name, sigma_I, sigma_g, l2=20.0, engine=None, **extra):
    return Scenario(
        source=SourceSpec(sigma_I=sigma_I, sigma_g=sigma_g, wavelength=WAVELENGTH),
        geometry=GeometrySpec(z1=10.0, z2=40.0, l1=30.0, f=10.0, l2=l2),
        object=ObjectSpec("double_slit", slit_width=0.01, separation=0.03),
        engine=engine or EngineConfig(),
        name=name,
        **extra,
    )


def _fig2(name, l2, n_source):
    # brute grids sized so `--engine brute` resolves the preset as shipped
    return _scenario(name, 5.0, 1e-5, l2=l2, engine=EngineConfig(n_source=n_source, n_diff=33))


def _sweep_preset(name, series):
    sweep = SweepSpec(
        parameter="source.sigma_g",
        values=SIGMA_G_SWEEP,
        series_parameter="source.sigma_I",
        series_values=series,
    )
    return _scenario(name, series[0], SIGMA_G_SWEEP[0], sweep=sweep)


def _ghost_interference():
    s = _scenario(
        "ghost_interference",
        1.0,
        1e-4,
        engine=EngineConfig(n_source=4401, n_diff=33),
        detector=DetectorSpec(u2_min=-3.0, u2_max=3.0, n_points=601),
    )
    return s.with_value("geometry.lens_present", False)


PRESETS = {
    "fig2a": lambda: _fig2("fig2a", 20.0, 513),
    "fig2b": lambda: _fig2("fig2b", 20.5, 5601),
    "fig2c": lambda: _fig2("fig2c", 21.5, 13501),
    "fig3a": lambda: _scenario("fig3a", 0.1, 1e-3),
    "fig3b": lambda: _scenario("fig3b", 1.0, 1e-3),
    "fig3c": lambda: _scenario("fig3c", 5.0, 1e-3),
    "fig4a": lambda: _scenario("fig4a", 5.0, 1e-5),
    "fig4b": lambda: _scenario("fig4b", 5.0, 5e-4),
    "fig4c": lambda: _scenario("fig4c", 5.0, 3e-3),
    "fig5": lambda: _sweep_preset("fig5", (1.0, 5.0, 10.0)),
    "fig6": lambda: _sweep_preset("fig6", (1.0, 5.0)),
    "ghost_interference": _ghost_interference,
}


def preset(name):
    try:
        return PRESETS[name]()
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}", "preset") from None
