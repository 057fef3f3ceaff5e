"""Finite sections of an infinite-dimensional minimization, driven to its limit.

The model problem lives in l2: T is the diagonal operator with cyclic
weights (1, 2, 1, 2, ...), the constraint is the left shift L pinned to the
harmonic sequence b = (1, 1/2, 1/3, ...).  Each n-by-n truncation is an
ordinary constrained quadratic minimization; the minima increase with n
and converge to 7 pi^2 / 24, with the minimizer locked to
(0, 1, 1/2, 1/3, ...) at every size.

Run with a list of sizes, or accept the default sweep:

    python3 demos/shift_operator_convergence.py 10 100 1000 10000
"""

import sys

import numpy as np

from qfmin import (
    EXAMPLE1_LIMIT,
    example1_convergence,
    example1_solution,
)


def main(argv=None):
    args = sys.argv[1:] if argv is None else argv
    sizes = [int(s) for s in args] if args else [10, 100, 1000, 10000]

    series = example1_convergence(sizes)
    print(f"limit value: 7 pi^2 / 24 = {EXAMPLE1_LIMIT:.15f}\n")
    print(f"{'n':>7s}  {'minimum':>18s}  {'gap to limit':>13s}")
    for n, value, err in zip(series.sizes, series.min_values, series.errors):
        print(f"{n:7d}  {value:18.15f}  {err:13.6e}")

    # the gap closes like 1.5 / n: each truncation is exactly the partial
    # sum of the limiting series
    n_last = series.sizes[-1]
    print(f"\nscaled tail n * gap at n = {n_last}: "
          f"{n_last * series.errors[-1]:.4f} (≈ 1.5)")

    xhat, _ = example1_solution(64)
    head = np.round(xhat[:6], 12)
    print(f"\nminimizer head at n = 64: {head.tolist()}")
    print("entries follow (0, 1, 1/2, 1/3, ...) exactly, independent of n")


if __name__ == "__main__":
    main()
