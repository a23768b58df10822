import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from ghostlight.geometry import PathGeometry, WaveContext
from ghostlight.objects import double_slit

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    derandomize=True,
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

WAVELENGTH = 7.02e-4
DATA = os.path.join(os.path.dirname(__file__), "data")


@pytest.fixture
def ctx():
    return WaveContext(WAVELENGTH)


@pytest.fixture
def fig2_geometry():
    return PathGeometry(z1=10.0, z2=40.0, l1=30.0, f=10.0, l2=20.0)


@pytest.fixture
def slits():
    return double_slit(0.01, 0.03)


@pytest.fixture
def detector_grid():
    return np.linspace(-0.05, 0.05, 201)


_ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture
def criterion(request):
    """Record one acceptance line; a test that errors out is logged as FAIL."""
    marker = request.node.get_closest_marker("criterion")
    number, title = marker.args
    lines = request.config.stash.setdefault(_ACCEPTANCE, {})
    lines[number] = f"FAIL  #{number:<2} {title}: did not complete"

    def record(passed, detail):
        lines[number] = f"{'PASS' if passed else 'FAIL'}  #{number:<2} {title}: {detail}"
        return passed

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for number in sorted(lines):
            terminalreporter.write_line(lines[number])
