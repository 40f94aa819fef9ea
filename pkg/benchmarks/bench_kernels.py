"""Timing comparison of the numba kernels against the numpy fallbacks.

Runs both backends in one process: the dispatched names follow
RUMIN_ETA_DISABLE_NUMBA, the *_numpy names are always the fallback.
Numba timings exclude the first (compiling) call.

Usage: python3 benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import time

import numpy as np

from rumin_eta import kernels


def best_of(fn, args, repeats):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - start)
    return min(times)


def report(label, base, fast):
    ratio = base / fast if fast > 0 else float("inf")
    print(f"{label:<44} numpy {base * 1e3:9.3f} ms   "
          f"{kernels.backend_name():>5} {fast * 1e3:9.3f} ms   x{ratio:.2f}")


def bench_sin_power_sum(repeats):
    for p, n_terms in [(3, 200_000), (5, 1_000_000), (7, 4_000_000)]:
        args = (0.3, p, n_terms)
        kernels.sin_power_sum(*args)  # trigger JIT before timing
        fast = best_of(kernels.sin_power_sum, args, repeats)
        base = best_of(kernels.sin_power_sum_numpy, args, repeats)
        report(f"sin_power_sum(p={p}, n={n_terms})", base, fast)


def bench_sym_eigenvalues(repeats):
    rng = np.random.default_rng(7)
    for n in [96, 192, 384]:
        raw = rng.standard_normal((n, n))
        mat = (raw + raw.T) / 2.0
        kernels.sym_eigenvalues(mat)
        fast = best_of(kernels.sym_eigenvalues, (mat,), repeats)
        base = best_of(kernels.sym_eigenvalues_numpy, (mat,), repeats)
        report(f"sym_eigenvalues(n={n})", base, fast)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5,
                        help="timed runs per case; the best is reported")
    opts = parser.parse_args()
    print(f"active backend: {kernels.backend_name()}")
    if not kernels.HAS_NUMBA:
        print("numba disabled or unavailable; both columns use numpy")
    bench_sin_power_sum(opts.repeats)
    bench_sym_eigenvalues(opts.repeats)


if __name__ == "__main__":
    main()
