#!/usr/bin/env python3
"""Time the numba and numpy summation kernels on the same sweeps.

    python benchmarks/bench_backends.py [--points 100000] [--repeat 5] [--tol 1e-14]

Kernels are timed on a log grid of scales with the truncation indices the
evaluators would use; numba is warmed up first so compile time is excluded.
"""

import argparse
import time

import numpy as np

from thetasum import S_STAR, Method, truncation_K
from thetasum import kernels


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=100_000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--tol", type=float, default=1e-14)
    args = ap.parse_args()

    s = np.geomspace(0.02, 20.0, args.points)
    low, high = s[s <= S_STAR], s[s > S_STAR]
    k_low = np.array([truncation_K(Method.DIRECT, x, args.tol) for x in low], dtype=np.int64)
    k_high = np.array([truncation_K(Method.TRANSFORMED, x, args.tol) for x in high], dtype=np.int64)
    # direct-only sweep over the whole range: the unaccelerated baseline
    k_all = np.array([truncation_K(Method.DIRECT, x, args.tol) for x in s], dtype=np.int64)

    cases = [
        ("direct, s <= s*", "direct_tail", low, k_low),
        ("transformed, s > s*", "transformed_tail", high, k_high),
        ("direct, whole range", "direct_tail", s, k_all),
    ]
    print(f"{'case':<24}{'points':>9}{'max K':>7}{'numba ms':>11}{'numpy ms':>11}{'speedup':>9}{'max rel diff':>14}")
    for label, name, ss, kk in cases:
        fast = getattr(kernels, f"{name}_numba")
        slow = getattr(kernels, f"{name}_numpy")
        a = 0.25
        fast(a, ss[:2], kk[:2])
        t_fast = best_of(lambda: fast(a, ss, kk), args.repeat)
        t_slow = best_of(lambda: slow(a, ss, kk), args.repeat)
        x, y = fast(a, ss, kk), slow(a, ss, kk)
        rel = np.max(np.abs(x - y) / np.maximum(np.abs(y), 1e-300))
        print(f"{label:<24}{ss.size:>9}{kk.max():>7}{t_fast * 1e3:>11.2f}{t_slow * 1e3:>11.2f}"
              f"{t_slow / t_fast:>9.1f}{rel:>14.2e}")


if __name__ == "__main__":
    main()
