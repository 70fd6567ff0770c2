"""Float-backend hot kernels: tropical matrix products and max cycle mean.

Every kernel exists in two functionally identical versions, a numba
``@njit`` one and a pure-numpy one.  The active version is chosen at import
time: numba is used when it imports cleanly, unless the environment variable
``TROPRANK_NUMBA`` is set to ``0``/``false``/``no``, which forces the numpy
path.  Both versions stay importable for benchmarking (see
``benchmarks/bench_kernels.py``).

All kernels take and return plain float64 ndarrays; -inf encodes the
max-plus zero / a missing edge.  Results are deterministic and identical
between the two paths: max is order-insensitive and both paths combine the
same products/sums.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "NUMBA_ENABLED",
    "maxplus_matmul",
    "maxtimes_matmul",
    "karp_max_cycle_mean",
    "max_cycle_mean",
]


def _numba_requested() -> bool:
    flag = os.environ.get("TROPRANK_NUMBA", "1").strip().lower()
    return flag not in ("0", "false", "no", "off")


# ---------------------------------------------------------------------------
# pure-numpy versions


def maxplus_matmul_np(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """C[i, j] = max_k (a[i, k] + b[k, j]); -inf rows/cols propagate."""
    # no +inf in the carrier, so the sums are never NaN
    return (a[:, :, None] + b[None, :, :]).max(axis=1)


def maxtimes_matmul_np(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """C[i, j] = max_k (a[i, k] * b[k, j]) over nonnegative entries."""
    return (a[:, :, None] * b[None, :, :]).max(axis=1)


def karp_max_cycle_mean_np(w: np.ndarray) -> float:
    """Maximum cycle mean of one strongly connected component.

    w is the (max, +) weight matrix of the component, -inf for absent edges.
    Returns -inf when the component has no cycle (single vertex, no loop).
    """
    n = w.shape[0]
    if n == 1:
        return float(w[0, 0])
    dist = np.full((n + 1, n), -np.inf)
    dist[0, 0] = 0.0
    for t in range(1, n + 1):
        with np.errstate(invalid="ignore"):
            s = dist[t - 1][:, None] + w
        np.nan_to_num(s, copy=False, nan=-np.inf)
        dist[t] = s.max(axis=0)
    best = -np.inf
    with np.errstate(invalid="ignore"):
        ratios = (dist[n][None, :] - dist[:n]) / (n - np.arange(n))[:, None]
    # vertices unreachable at step t give +inf (ignored by the min);
    # unreachable at step n give nan, masked out below
    ratios = np.where(np.isnan(ratios), -np.inf, ratios)
    reach_n = dist[n] > -np.inf
    if reach_n.any():
        per_vertex = np.where(dist[:n] > -np.inf, ratios, np.inf).min(axis=0)
        best = float(per_vertex[reach_n].max())
    return best


# ---------------------------------------------------------------------------
# numba versions (compiled lazily on first call)

NUMBA_ENABLED = False
maxplus_matmul_nb = None
maxtimes_matmul_nb = None
karp_max_cycle_mean_nb = None

if _numba_requested():
    try:
        from numba import njit

        @njit(cache=True)
        def _maxplus_matmul_jit(a, b):
            n, m = a.shape
            p = b.shape[1]
            out = np.full((n, p), -np.inf)
            for i in range(n):
                for j in range(p):
                    best = -np.inf
                    for k in range(m):
                        x = a[i, k]
                        y = b[k, j]
                        if x > -np.inf and y > -np.inf:
                            v = x + y
                            if v > best:
                                best = v
                    out[i, j] = best
            return out

        @njit(cache=True)
        def _maxtimes_matmul_jit(a, b):
            n, m = a.shape
            p = b.shape[1]
            out = np.zeros((n, p))
            for i in range(n):
                for j in range(p):
                    best = 0.0
                    for k in range(m):
                        v = a[i, k] * b[k, j]
                        if v > best:
                            best = v
                    out[i, j] = best
            return out

        @njit(cache=True)
        def _karp_jit(w):
            n = w.shape[0]
            if n == 1:
                return w[0, 0]
            dist = np.full((n + 1, n), -np.inf)
            dist[0, 0] = 0.0
            for t in range(1, n + 1):
                for v in range(n):
                    best = -np.inf
                    for u in range(n):
                        d = dist[t - 1, u]
                        e = w[u, v]
                        if d > -np.inf and e > -np.inf:
                            c = d + e
                            if c > best:
                                best = c
                    dist[t, v] = best
            best = -np.inf
            for v in range(n):
                if dist[n, v] == -np.inf:
                    continue
                worst = np.inf
                for t in range(n):
                    if dist[t, v] > -np.inf:
                        r = (dist[n, v] - dist[t, v]) / (n - t)
                        if r < worst:
                            worst = r
                if worst < np.inf and worst > best:
                    best = worst
            return best

        maxplus_matmul_nb = _maxplus_matmul_jit
        maxtimes_matmul_nb = _maxtimes_matmul_jit

        def karp_max_cycle_mean_nb(w):
            return float(_karp_jit(w))

        NUMBA_ENABLED = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        NUMBA_ENABLED = False


if NUMBA_ENABLED:
    maxplus_matmul = maxplus_matmul_nb
    maxtimes_matmul = maxtimes_matmul_nb
    karp_max_cycle_mean = karp_max_cycle_mean_nb
else:
    maxplus_matmul = maxplus_matmul_np
    maxtimes_matmul = maxtimes_matmul_np
    karp_max_cycle_mean = karp_max_cycle_mean_np


def max_cycle_mean(w: np.ndarray) -> float:
    """Maximum cycle mean of an arbitrary (max, +) weight matrix.

    Splits the graph into strongly connected components and runs the Karp
    dynamic program on each; -inf means the graph is acyclic.
    """
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import connected_components

    n = w.shape[0]
    finite = w > -np.inf
    if not finite.any():
        return -np.inf
    ncomp, labels = connected_components(csr_matrix(finite), directed=True, connection="strong")
    best = -np.inf
    for comp in range(ncomp):
        idx = np.flatnonzero(labels == comp)
        if len(idx) == 1:
            loop = w[idx[0], idx[0]]
            if loop > best:
                best = float(loop)
            continue
        sub = np.ascontiguousarray(w[np.ix_(idx, idx)])
        v = karp_max_cycle_mean(sub)
        if v > best:
            best = float(v)
    return best
