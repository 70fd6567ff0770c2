"""Benchmark the float-lane kernels: numba @njit versus the pure-numpy path.

Usage:
    python benchmarks/bench_kernels.py [--sizes 64,128,256] [--repeats 5]

The numba path is also what ``TROPRANK_NUMBA=1`` (the default) selects at
import time; ``TROPRANK_NUMBA=0`` forces the numpy path package-wide.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from troprank import _kernels


def best_of(fn, *args, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench(sizes: list[int], repeats: int) -> None:
    if not _kernels.NUMBA_ENABLED:
        print("numba path unavailable (TROPRANK_NUMBA=0 or import failure); ")
        print("only the numpy path can be timed.")
    rows = []
    rs = np.random.RandomState(42)
    for n in sizes:
        a = rs.uniform(-5, 5, size=(n, n))
        b = rs.uniform(-5, 5, size=(n, n))
        at, bt = np.exp(a), np.exp(b)

        cases = [
            ("max-plus matmul", _kernels.maxplus_matmul_np, _kernels.maxplus_matmul_nb, (a, b)),
            ("max-times matmul", _kernels.maxtimes_matmul_np, _kernels.maxtimes_matmul_nb, (at, bt)),
            ("karp cycle mean", _kernels.karp_max_cycle_mean_np, _kernels.karp_max_cycle_mean_nb, (a,)),
        ]
        for name, np_fn, nb_fn, args in cases:
            t_np = best_of(np_fn, *args, repeats=repeats)
            if _kernels.NUMBA_ENABLED:
                nb_fn(*args)  # compile outside the timed region
                t_nb = best_of(nb_fn, *args, repeats=repeats)
                rows.append((name, n, t_np, t_nb, t_np / t_nb))
            else:
                rows.append((name, n, t_np, float("nan"), float("nan")))

    print(f"{'kernel':<18} {'n':>5} {'numpy [ms]':>12} {'numba [ms]':>12} {'speedup':>8}")
    for name, n, t_np, t_nb, speedup in rows:
        print(
            f"{name:<18} {n:>5} {t_np * 1e3:>12.3f} {t_nb * 1e3:>12.3f} {speedup:>7.2f}x"
        )


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="64,128,256")
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    bench([int(s) for s in args.sizes.split(",")], args.repeats)


if __name__ == "__main__":
    main()
