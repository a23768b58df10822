import os
import subprocess
import sys

import numpy as np
import pytest

from ghostlight import _kernels

requires_numba = pytest.mark.skipif(_kernels.numba is None, reason="numba not importable")


@pytest.fixture
def rng():
    return np.random.default_rng(7)


def test_chirp_sum_numpy_matches_definition(rng):
    coef = rng.standard_normal(37) + 1j * rng.standard_normal(37)
    x = rng.uniform(-2, 2, 37)
    u = rng.uniform(-1, 1, 11)
    direct = np.array([np.sum(coef * np.exp(1j * 3.3 * x * um)) for um in u])
    np.testing.assert_allclose(_kernels.chirp_sum_numpy(coef, x, u, 3.3), direct, rtol=1e-13, atol=1e-13)


def test_chirp_sum_chunking(rng, monkeypatch):
    coef = rng.standard_normal(50) + 0j
    x = rng.uniform(-1, 1, 50)
    u = rng.uniform(-1, 1, 23)
    whole = _kernels.chirp_sum_numpy(coef, x, u, 1.7)
    monkeypatch.setattr(_kernels, "_CHUNK_ELEMENTS", 120)
    np.testing.assert_array_equal(_kernels.chirp_sum_numpy(coef, x, u, 1.7), whole)


def test_moment4_numpy_matches_loops(rng):
    n = 5
    w = [rng.standard_normal(n) + 1j * rng.standard_normal(n) for _ in range(4)]
    S = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    total = 0
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    total += w[0][i] * w[1][j] * w[2][k] * w[3][l] * (S[i, k] * S[j, l] + S[i, l] * S[j, k])
    assert _kernels.moment4_sum_numpy(*w, S) == pytest.approx(total, rel=1e-12)


def test_moment4_factorizes(rng):
    # the double sum splits into products of bilinear forms
    n = 9
    w = [rng.standard_normal(n) + 1j * rng.standard_normal(n) for _ in range(4)]
    S = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    expected = (w[0] @ S @ w[2]) * (w[1] @ S @ w[3]) + (w[0] @ S @ w[3]) * (w[1] @ S @ w[2])
    assert _kernels.moment4_sum(*w, S) == pytest.approx(expected, rel=1e-11)


@requires_numba
def test_numba_chirp_sum_matches_numpy(rng):
    coef = rng.standard_normal(400) + 1j * rng.standard_normal(400)
    x = rng.uniform(-5, 5, 400)
    u = rng.uniform(-0.1, 0.1, 31)
    a = _kernels._chirp_sum_nb(coef, x, u, -900.0)
    b = _kernels.chirp_sum_numpy(coef, x, u, -900.0)
    np.testing.assert_allclose(a, b, rtol=1e-11, atol=1e-11 * np.abs(b).max())


@requires_numba
def test_numba_moment4_matches_numpy(rng):
    n = 12
    w = [rng.standard_normal(n) + 1j * rng.standard_normal(n) for _ in range(4)]
    S = rng.standard_normal((n, n)) + 0j
    assert complex(_kernels._moment4_sum_nb(*w, S)) == pytest.approx(_kernels.moment4_sum_numpy(*w, S), rel=1e-11)


@pytest.mark.parametrize("raw, expected", [("3", 3), ("1", 1), ("0", 1), ("-4", 1)])
def test_worker_count_env(monkeypatch, raw, expected):
    monkeypatch.setenv("GHOSTLIGHT_THREADS", raw)
    assert _kernels.worker_count() == expected


def test_worker_count_default(monkeypatch):
    monkeypatch.delenv("GHOSTLIGHT_THREADS", raising=False)
    assert _kernels.worker_count() >= 1


def test_backend_flag_selects_numpy():
    env = dict(os.environ, GHOSTLIGHT_DISABLE_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "from ghostlight import _kernels; print(_kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "numpy"
