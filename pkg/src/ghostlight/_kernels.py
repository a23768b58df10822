"""Hot inner loops of the brute-force engine and the fourth-moment oracle.

Each kernel has a numba ``@njit`` implementation and a pure-numpy twin. The
numba path is used unless ``GHOSTLIGHT_DISABLE_NUMBA`` is set to a truthy value
(or numba fails to import). Both paths sum in a fixed order per output element,
so results are reproducible run to run.
"""

import os

import numpy as np

_FALSY = ("", "0", "false", "no", "off")


def _numba_requested():
    return os.environ.get("GHOSTLIGHT_DISABLE_NUMBA", "").strip().lower() in _FALSY


try:
    import numba
    from numba import njit, prange
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and _numba_requested()
BACKEND = "numba" if USE_NUMBA else "numpy"

_CHUNK_ELEMENTS = 1 << 22


def worker_count():
    """Worker cap from GHOSTLIGHT_THREADS, defaulting to the available CPUs."""
    raw = os.environ.get("GHOSTLIGHT_THREADS", "").strip()
    available = len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else os.cpu_count()
    if not raw:
        return max(1, available or 1)
    try:
        return max(1, int(raw))
    except ValueError:
        return max(1, available or 1)


def chirp_sum_numpy(coef, x, u, q):
    """out[m] = sum_j coef[j] * exp(1j * q * x[j] * u[m])."""
    coef = np.asarray(coef, dtype=np.complex128)
    x = np.asarray(x, dtype=np.float64)
    u = np.asarray(u, dtype=np.float64)
    out = np.empty(u.shape[0], dtype=np.complex128)
    step = max(1, _CHUNK_ELEMENTS // max(1, x.shape[0]))
    for start in range(0, u.shape[0], step):
        block = u[start:start + step]
        out[start:start + step] = np.exp(1j * q * np.outer(block, x)) @ coef
    return out


def moment4_sum_numpy(w1, w2, w3, w4, S):
    """sum_{ijkl} w1_i w2_j w3_k w4_l (S_ik S_jl + S_il S_jk), as a direct 4-D sum."""
    direct = np.einsum("i,j,k,l,ik,jl->", w1, w2, w3, w4, S, S, optimize=False)
    crossed = np.einsum("i,j,k,l,il,jk->", w1, w2, w3, w4, S, S, optimize=False)
    return complex(direct + crossed)


if numba is not None:
    if "NUMBA_THREADING_LAYER" not in os.environ:
        # skip TBB: the system copy may be too old and numba warns about it
        numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]

    @njit(parallel=True, cache=True, fastmath=False)
    def _chirp_sum_nb(coef, x, u, q):
        n_out = u.shape[0]
        n_in = x.shape[0]
        out = np.empty(n_out, dtype=np.complex128)
        for m in prange(n_out):
            qu = q * u[m]
            re = 0.0
            im = 0.0
            for j in range(n_in):
                phase = qu * x[j]
                c = np.cos(phase)
                s = np.sin(phase)
                cr = coef[j].real
                ci = coef[j].imag
                re += cr * c - ci * s
                im += cr * s + ci * c
            out[m] = re + 1j * im
        return out

    @njit(cache=True)
    def _moment4_sum_nb(w1, w2, w3, w4, S):
        n = w1.shape[0]
        total = 0.0 + 0.0j
        for i in range(n):
            for j in range(n):
                wij = w1[i] * w2[j]
                for k in range(n):
                    wijk = wij * w3[k]
                    s_ik = S[i, k]
                    s_jk = S[j, k]
                    for l in range(n):
                        total += wijk * w4[l] * (s_ik * S[j, l] + S[i, l] * s_jk)
        return total


def chirp_sum(coef, x, u, q):
    if not USE_NUMBA:
        return chirp_sum_numpy(coef, x, u, q)
    return _chirp_sum_nb(
        np.ascontiguousarray(coef, dtype=np.complex128),
        np.ascontiguousarray(x, dtype=np.float64),
        np.ascontiguousarray(u, dtype=np.float64),
        float(q),
    )


def moment4_sum(w1, w2, w3, w4, S):
    if not USE_NUMBA:
        return moment4_sum_numpy(w1, w2, w3, w4, S)
    args = [np.ascontiguousarray(a, dtype=np.complex128) for a in (w1, w2, w3, w4, S)]
    return complex(_moment4_sum_nb(*args))


if USE_NUMBA:
    numba.set_num_threads(min(worker_count(), numba.config.NUMBA_NUM_THREADS))
