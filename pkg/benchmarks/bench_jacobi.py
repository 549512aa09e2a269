"""Time the one-sided Jacobi sweep kernels against each other.

Compares the numba-compiled loop kernel, the vectorized numpy kernel and the
same loop kernel run as plain Python, on random nonnegative square matrices.

    python benchmarks/bench_jacobi.py --sizes 4 8 16 32 --repeats 20
"""
import argparse
import time

import numpy as np

from rrsvd import _kernels
from rrsvd.linalg import MAX_SWEEPS, TAU_JACOBI


def _run(kernel, a):
    g = np.array(a, dtype=np.float64, order="C")
    v = np.eye(a.shape[1])
    floor = (max(a.shape) * np.finfo(float).eps * np.linalg.norm(a)) ** 2
    return kernel(g, v, TAU_JACOBI, floor, MAX_SWEEPS)


def _best_of(kernel, mats, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        for a in mats:
            _run(kernel, a)
        best = min(best, time.perf_counter() - start)
    return best / len(mats)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[4, 8, 16, 32])
    parser.add_argument("--repeats", type=int, default=10)
    parser.add_argument("--batch", type=int, default=20, help="matrices per timing")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    kernels = {"numpy": _kernels._sweeps_numpy, "python-loops": _kernels._sweeps_loops}
    if _kernels._sweeps_numba is not None:
        # first call compiles (or loads the on-disk cache); keep it out of the timings
        _run(_kernels._sweeps_numba, np.ones((2, 2)) + np.eye(2))
        kernels = {"numba": _kernels._sweeps_numba, **kernels}
    else:
        print("numba disabled or not installed; timing the fallbacks only")

    rng = np.random.default_rng(args.seed)
    header = f"{'n':>4}" + "".join(f"{name:>16}" for name in kernels)
    print(header + "   (microseconds per matrix, best of repeats)")
    for n in args.sizes:
        mats = [rng.uniform(0.0, 6.0, size=(n, n)) for _ in range(args.batch)]
        row = f"{n:>4}"
        for kernel in kernels.values():
            row += f"{_best_of(kernel, mats, args.repeats) * 1e6:>16.1f}"
        print(row)


if __name__ == "__main__":
    main()
