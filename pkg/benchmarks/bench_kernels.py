#!/usr/bin/env python3
"""Benchmark the two hot kernels on both execution paths (numba vs numpy).

Run from the repository root:  python3 benchmarks/bench_kernels.py
"""

import random
import time

import numpy as np

from qdp4 import _accel
from qdp4.fields import GF
from qdp4.hyperoct import index_tables
from qdp4.pencil import _encode_form, _encoded_tables
from qdp4.sampling import random_smooth_pencil


def timed(fn, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return result, best


def bench_point_count():
    print("== projective point count: common zeros of two quadrics on P^4(F_q)")
    rng = random.Random(42)
    cases = [(3, 2), (3, 3), (5, 2), (7, 2), (5, 3)]
    print(f"{'q':>6} {'numba (s)':>12} {'numpy (s)':>12} {'speedup':>9}")
    for p, k in cases:
        P = random_smooth_pencil(GF(p), rng)
        q = p ** k
        add, mul = _encoded_tables(p, k)
        CA = _encode_form(P.A, p)
        CB = _encode_form(P.B, p)
        # warm the JIT before timing
        _accel.count_zero_pairs(CA, CB, add, mul, q, force="jit")
        n_jit, t_jit = timed(lambda: _accel.count_zero_pairs(CA, CB, add, mul, q,
                                                             force="jit"))
        reps = 3 if q <= 50 else 1
        n_np, t_np = timed(lambda: _accel.count_zero_pairs(CA, CB, add, mul, q,
                                                           force="numpy"),
                           repeats=reps)
        assert n_jit == n_np, "paths disagree"
        print(f"{q:>6} {t_jit:>12.4f} {t_np:>12.4f} {t_np / t_jit:>8.1f}x")


def bench_retract_check():
    print("== exhaustive retract homomorphism check (3840^2 pairs)")
    _, perm_mul, mask_apply, retract_mask = index_tables()
    _accel.retract_homomorphism_violations(perm_mul, mask_apply, retract_mask,
                                           force="jit")
    v_jit, t_jit = timed(lambda: _accel.retract_homomorphism_violations(
        perm_mul, mask_apply, retract_mask, force="jit"))
    v_np, t_np = timed(lambda: _accel.retract_homomorphism_violations(
        perm_mul, mask_apply, retract_mask, force="numpy"))
    assert v_jit == v_np == 0
    print(f"{'pairs':>10} {'numba (s)':>12} {'numpy (s)':>12} {'speedup':>9}")
    print(f"{3840 * 3840:>10} {t_jit:>12.4f} {t_np:>12.4f} {t_np / t_jit:>8.1f}x")


def main():
    if not _accel._HAVE_NUMBA:
        print("numba unavailable: only the numpy path can run")
        return
    bench_point_count()
    print()
    bench_retract_check()


if __name__ == "__main__":
    main()
