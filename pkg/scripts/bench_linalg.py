#!/usr/bin/env python3
"""Benchmark the exact elimination paths.

Compares the vectorized prime-field reduction against the generic
element-wise path (forced by using rationals with integer entries), the
two routes every higher-level computation reduces to.

Usage: python scripts/bench_linalg.py [--size N] [--reps R]
"""

import argparse
import random
import time

from smc_kit import exactla as la
from smc_kit.exactla import Mat, PrimeField, RationalField


def bench(field, n, reps, rng):
    total = 0.0
    for _ in range(reps):
        m = Mat.from_int_rows(field, [[rng.randrange(-50, 51) for _ in range(n)]
                                      for _ in range(n)])
        t0 = time.perf_counter()
        la.rref(m)
        total += time.perf_counter() - t0
    return total / reps


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--size", type=int, default=120)
    ap.add_argument("--reps", type=int, default=3)
    args = ap.parse_args()
    rng = random.Random(0)
    n = args.size
    fp = bench(PrimeField(32003), n, args.reps, rng)
    qq = bench(RationalField(), min(n, 60), args.reps, rng)
    print(f"rref {n}x{n} over F_32003 (vectorized): {fp * 1000:8.1f} ms")
    print(f"rref {min(n, 60)}x{min(n, 60)} over Q (generic):      {qq * 1000:8.1f} ms")
    # correctness cross-check on a shared instance
    ints = [[rng.randrange(-9, 10) for _ in range(30)] for _ in range(25)]
    rp = la.rref(Mat.from_int_rows(PrimeField(32003), ints))
    rq = la.rref(Mat.from_int_rows(RationalField(), ints))
    assert rp.pivots == rq.pivots
    print(f"pivot agreement on a shared instance: rank {len(rp.pivots)}")


if __name__ == "__main__":
    main()
