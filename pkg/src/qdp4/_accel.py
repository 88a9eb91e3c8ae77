"""Hot inner loops: JIT kernels with pure-numpy fallbacks.

The environment flag QDP4_NO_JIT=1 forces the numpy path; by default the
numba kernels are used when numba imports.  Both paths are exact integer
computations on precomputed field tables and must agree bit for bit.
"""

from __future__ import annotations

import os

import numpy as np

_HAVE_NUMBA = False
try:
    from numba import njit as _njit
    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _njit = None


def jit_requested() -> bool:
    return os.environ.get("QDP4_NO_JIT", "").strip().lower() not in {"1", "true", "yes"}


def jit_active() -> bool:
    return _HAVE_NUMBA and jit_requested()


# ---------------------------------------------------------------------------
# Projective point counting: common zeros of two quadratic forms on P^4(F_q)
# ---------------------------------------------------------------------------
# CA, CB are 5x5 int64 matrices of encoded field scalars with c[i][j] (i <= j)
# the coefficient of x_i x_j; entries below the diagonal are unused.  add/mul
# are q x q encoded-arithmetic tables; the encoded zero is 0.

if _HAVE_NUMBA:

    @_njit(cache=True)
    def _count_jit(CA, CB, add, mul, q):  # pragma: no cover - exercised via wrapper
        total = 0
        x = np.zeros(5, np.int64)
        for m in range(4, -1, -1):
            if m == 4:
                if CA[4, 4] == 0 and CB[4, 4] == 0:
                    total += 1
                continue
            n_out = 3 - m
            digits = np.zeros(3, np.int64)
            while True:
                for i in range(5):
                    x[i] = 0
                x[m] = 1
                for i in range(n_out):
                    x[m + 1 + i] = digits[i]
                baseA = 0
                baseB = 0
                for i in range(m, 4):
                    xi = x[i]
                    if xi == 0:
                        continue
                    for j in range(i, 4):
                        xj = x[j]
                        if xj == 0:
                            continue
                        if CA[i, j] != 0:
                            baseA = add[baseA, mul[CA[i, j], mul[xi, xj]]]
                        if CB[i, j] != 0:
                            baseB = add[baseB, mul[CB[i, j], mul[xi, xj]]]
                linA = 0
                linB = 0
                for i in range(m, 4):
                    xi = x[i]
                    if xi == 0:
                        continue
                    if CA[i, 4] != 0:
                        linA = add[linA, mul[CA[i, 4], xi]]
                    if CB[i, 4] != 0:
                        linB = add[linB, mul[CB[i, 4], xi]]
                quadA = CA[4, 4]
                quadB = CB[4, 4]
                for t in range(q):
                    vA = add[baseA, mul[t, add[linA, mul[quadA, t]]]]
                    if vA == 0:
                        vB = add[baseB, mul[t, add[linB, mul[quadB, t]]]]
                        if vB == 0:
                            total += 1
                k = 0
                while k < n_out:
                    digits[k] += 1
                    if digits[k] < q:
                        break
                    digits[k] = 0
                    k += 1
                if k == n_out:
                    break
        return total


def _count_numpy(CA, CB, add, mul, q):
    total = 0
    for m in range(4, -1, -1):
        if m == 4:
            if CA[4, 4] == 0 and CB[4, 4] == 0:
                total += 1
            continue
        n_out = 3 - m
        shape = (q,) * n_out if n_out else ()
        coords = [None] * 5  # scalar 0/1 or broadcast arrays
        for i in range(5):
            coords[i] = 0
        coords[m] = 1
        for i in range(n_out):
            idx = np.arange(q, dtype=np.int64)
            coords[m + 1 + i] = idx.reshape((q,) + (1,) * (n_out - 1 - i))

        def qpart(C):
            acc = np.zeros(shape, dtype=np.int64)
            for i in range(m, 4):
                xi = coords[i]
                if np.isscalar(xi) and xi == 0:
                    continue
                for j in range(i, 4):
                    xj = coords[j]
                    if np.isscalar(xj) and xj == 0:
                        continue
                    if C[i, j] == 0:
                        continue
                    term = mul[C[i, j]][mul[xi, xj]]
                    acc = add[acc, np.broadcast_to(term, shape)]
            return acc

        def lpart(C):
            acc = np.zeros(shape, dtype=np.int64)
            for i in range(m, 4):
                xi = coords[i]
                if np.isscalar(xi) and xi == 0:
                    continue
                if C[i, 4] == 0:
                    continue
                acc = add[acc, np.broadcast_to(mul[C[i, 4]][xi], shape)]
            return acc

        baseA, baseB = qpart(CA), qpart(CB)
        linA, linB = lpart(CA), lpart(CB)
        quadA, quadB = CA[4, 4], CB[4, 4]
        for t in range(q):
            vA = add[baseA, mul[t][add[linA, mul[quadA, t]]]]
            vB = add[baseB, mul[t][add[linB, mul[quadB, t]]]]
            total += int(np.count_nonzero((vA == 0) & (vB == 0)))
    return total


def count_zero_pairs(CA, CB, add, mul, q, force=None):
    """Number of points of P^4(F_q) where both encoded quadratic forms vanish.

    force: None (env default), "jit", or "numpy".
    """
    use_jit = jit_active() if force is None else (force == "jit")
    if use_jit:
        if not _HAVE_NUMBA:
            raise RuntimeError("numba is not available")
        return int(_count_jit(CA, CB, add, mul, q))
    return _count_numpy(CA, CB, add, mul, q)


# ---------------------------------------------------------------------------
# Exhaustive retract homomorphism check over all 3840^2 composable pairs
# ---------------------------------------------------------------------------

if _HAVE_NUMBA:

    @_njit(cache=True)
    def _retract_jit(perm_mul, mask_apply, retract_mask):  # pragma: no cover
        bad = 0
        for pa in range(120):
            for ma in range(32):
                rma = retract_mask[ma]
                for pb in range(120):
                    pab = perm_mul[pa, pb]
                    for mb in range(32):
                        lhs = 32 * pab + retract_mask[ma ^ mask_apply[pa, mb]]
                        rhs = 32 * pab + (rma ^ mask_apply[pa, retract_mask[mb]])
                        if lhs != rhs:
                            bad += 1
        return bad


def _retract_numpy(perm_mul, mask_apply, retract_mask, chunk=256):
    n = 3840
    idx = np.arange(n, dtype=np.int64)
    pall, mall = idx // 32, idx % 32
    bad = 0
    for start in range(0, n, chunk):
        pa = pall[start:start + chunk, None]
        ma = mall[start:start + chunk, None]
        pab = perm_mul[pa, pall[None, :]]
        m_ab = ma ^ mask_apply[pa, mall[None, :]]
        lhs = 32 * pab + retract_mask[m_ab]
        rhs = 32 * pab + (retract_mask[ma] ^ mask_apply[pa, retract_mask[mall[None, :]]])
        bad += int(np.count_nonzero(lhs != rhs))
    return bad


def retract_homomorphism_violations(perm_mul, mask_apply, retract_mask, force=None):
    """Count of pairs (a, b) in B5 x B5 with retract(ab) != retract(a) retract(b)."""
    use_jit = jit_active() if force is None else (force == "jit")
    if use_jit:
        if not _HAVE_NUMBA:
            raise RuntimeError("numba is not available")
        return int(_retract_jit(perm_mul, mask_apply, retract_mask))
    return _retract_numpy(perm_mul, mask_apply, retract_mask)
