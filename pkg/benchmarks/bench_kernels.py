"""Time the numba kernels against their numpy twins.

    python benchmarks/bench_kernels.py [--repeat 5]

Both backends are imported from the same module, so one process compares them
regardless of GHOSTLIGHT_DISABLE_NUMBA. Sizes mirror the brute engine on the
fig2a preset (513 x 33 source points, 201 detector points) and a 48-point
fourth-moment oracle.
"""

import argparse
import time

import numpy as np

from ghostlight import _kernels


def _best(fn, repeat):
    fn()  # warm-up (and JIT compile)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description="numba vs numpy kernel timings")
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if _kernels.numba is None:
        raise SystemExit("numba is not importable; nothing to compare")

    rng = np.random.default_rng(0)
    n_src, n_det = 513 * 33, 201
    coef = rng.standard_normal(n_src) + 1j * rng.standard_normal(n_src)
    x = rng.uniform(-20, 20, n_src)
    u = np.linspace(-0.05, 0.05, n_det)
    q = -2 * np.pi / 7.02e-4 / 10

    n4 = 48
    w = [rng.standard_normal(n4) + 1j * rng.standard_normal(n4) for _ in range(4)]
    S = rng.standard_normal((n4, n4)) + 0j

    cases = [
        ("chirp_sum", lambda: _kernels.chirp_sum_numpy(coef, x, u, q), lambda: _kernels._chirp_sum_nb(coef, x, u, q)),
        ("moment4_sum", lambda: _kernels.moment4_sum_numpy(*w, S), lambda: _kernels._moment4_sum_nb(*w, S)),
    ]
    print(f"{'kernel':<14}{'numpy (s)':>12}{'numba (s)':>12}{'speedup':>10}{'max |diff|':>14}")
    for name, f_np, f_nb in cases:
        t_np = _best(f_np, args.repeat)
        t_nb = _best(f_nb, args.repeat)
        diff = np.max(np.abs(np.asarray(f_np()) - np.asarray(f_nb())))
        print(f"{name:<14}{t_np:>12.4f}{t_nb:>12.4f}{t_np / t_nb:>10.1f}{diff:>14.2e}")
    print(f"threads: {_kernels.numba.get_num_threads()} (GHOSTLIGHT_THREADS caps this)")


if __name__ == "__main__":
    main()
