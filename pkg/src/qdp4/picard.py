"""Rank-6 Picard lattice of a quartic del Pezzo surface: zero-classes, the
D5 root system and Weyl group, and Galois-invariant rank certificates."""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .hyperoct import CycleSignature, SignedPerm
from .linalg import int_kernel_dim


class InvalidClassError(ValueError):
    pass


class InvalidRootError(ValueError):
    pass


class InvalidAutError(ValueError):
    pass


# Classes are integer 6-vectors in the basis H, E1..E5; the intersection form
# is diag(1, -1, -1, -1, -1, -1).

_FORM = (1, -1, -1, -1, -1, -1)
K_CLASS = (-3, 1, 1, 1, 1, 1)


def intersect(a, b) -> int:
    return sum(f * x * y for f, x, y in zip(_FORM, a, b))


def canonical_class():
    return K_CLASS


def add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def neg(a):
    return tuple(-x for x in a)


@lru_cache(maxsize=None)
def zero_classes():
    """The ten classes h with h^2 = 0 and h.K = -2, in lexicographic order."""
    out = []
    for i in range(1, 6):
        h = [1, 0, 0, 0, 0, 0]
        h[i] = -1
        out.append(tuple(h))
        hp = [2, -1, -1, -1, -1, -1]
        hp[i] = 0
        out.append(tuple(hp))
    return tuple(sorted(out))


def pair_of(h):
    """The partner h' = -K - h; the pairs realize the 2-to-1 map onto the
    five degenerate quadrics."""
    if h not in zero_classes():
        raise InvalidClassError(f"{h} is not a zero-class")
    return tuple(-k - x for k, x in zip(K_CLASS, h))


@lru_cache(maxsize=None)
def zero_class_pairs():
    """Five pairs (h, h'), each sorted, representative = lexicographically smaller."""
    seen = set()
    pairs = []
    for h in zero_classes():
        if h in seen:
            continue
        hp = pair_of(h)
        seen.update((h, hp))
        pairs.append((min(h, hp), max(h, hp)))
    pairs.sort()
    return tuple(pairs)


def pair_representatives():
    return tuple(p[0] for p in zero_class_pairs())


@lru_cache(maxsize=None)
def roots():
    """All 40 classes r with r^2 = -2 and r.K = 0."""
    out = []
    for i, j in itertools.combinations(range(1, 6), 2):
        for si in (1, -1):
            e = [0] * 6
            e[i], e[j] = si, -si
            out.append(tuple(e))  # +-(Ei - Ej)
    for i, j, k in itertools.combinations(range(1, 6), 3):
        for s in (1, -1):
            r = [s, 0, 0, 0, 0, 0]
            r[i] = r[j] = r[k] = -s
            out.append(tuple(r))  # +-(H - Ei - Ej - Ek)
    return tuple(sorted(out))


def brute_force_classes(square: int, k_pairing: int, box: int = 3):
    """All classes in the coefficient box [-box, box]^6 with the given
    self-intersection and K-pairing (completeness oracle for the lists above)."""
    rng = range(-box, box + 1)
    out = []
    for v in itertools.product(rng, repeat=6):
        if intersect(v, v) == square and intersect(v, K_CLASS) == k_pairing:
            out.append(v)
    return tuple(sorted(out))


def reflect(r, x):
    """Reflection in a (-2)-root: x -> x + (x.r) r."""
    if r not in roots():
        raise InvalidRootError(f"{r} is not a root")
    c = intersect(x, r)
    return tuple(xi + c * ri for xi, ri in zip(x, r))


def reflection_matrix(r) -> np.ndarray:
    cols = []
    for i in range(6):
        e = tuple(1 if j == i else 0 for j in range(6))
        cols.append(reflect(r, e))
    return np.array(cols, dtype=np.int64).T


@lru_cache(maxsize=None)
def weyl_group():
    """Closure of the 40 root reflections under composition (order 1920)."""
    gens = [reflection_matrix(r) for r in roots()]
    ident = np.eye(6, dtype=np.int64)
    seen = {ident.tobytes(): ident}
    frontier = [ident]
    while frontier:
        new = []
        for w in frontier:
            for g in gens:
                m = g @ w
                key = m.tobytes()
                if key not in seen:
                    seen[key] = m
                    new.append(m)
        frontier = new
    return tuple(sorted(seen.values(), key=lambda m: m.tobytes()))


def _check_lattice_aut(w: np.ndarray):
    if tuple(w @ np.array(K_CLASS)) != K_CLASS:
        raise InvalidAutError("automorphism must fix K")
    F = np.diag(np.array(_FORM, dtype=np.int64))
    if not np.array_equal(w.T @ F @ w, F):
        raise InvalidAutError("automorphism must preserve the intersection form")


@lru_cache(maxsize=None)
def _doubled_hbar():
    """2*hbar_i = 2*h_i + K for the five pair representatives."""
    return tuple(tuple(2 * hi + ki for hi, ki in zip(h, K_CLASS))
                 for h in pair_representatives())


def to_signed_perm(w: np.ndarray) -> SignedPerm:
    """The signed permutation of (hbar_1..hbar_5) induced by a Weyl element."""
    _check_lattice_aut(w)
    hbars = _doubled_hbar()
    index = {}
    for i, hb in enumerate(hbars):
        index[hb] = (i, 1)
        index[tuple(-x for x in hb)] = (i, -1)
    perm = [0] * 5
    signs = [1] * 5
    for i, hb in enumerate(hbars):
        img = tuple(int(x) for x in (w @ np.array(hb)))
        if img not in index:
            raise InvalidAutError("automorphism does not permute the zero-class pairs")
        j, s = index[img]
        perm[i] = j
        signs[j] = s
    return SignedPerm(tuple(perm), tuple(signs))


def matrix_on_standard_basis(sp: SignedPerm):
    """Action on the standard basis H, E1..E5 (rational; integral iff sp is even)."""
    hbars = _doubled_hbar()  # doubled, integral
    # change of basis: columns K, 2*hbar_i expressed in the standard basis
    C = np.array([K_CLASS] + [list(h) for h in hbars], dtype=np.int64).T
    P = np.zeros((6, 6), dtype=np.int64)
    P[0, 0] = 1
    for i in range(5):
        P[1 + sp.perm[i], 1 + i] = sp.signs[sp.perm[i]]
    Cf = [[Fraction(int(C[i][j])) for j in range(6)] for i in range(6)]
    from .linalg import frac_inverse, mat_mul
    Cinv = frac_inverse(Cf)
    Pf = [[Fraction(int(P[i][j])) for j in range(6)] for i in range(6)]
    return mat_mul(Cf, mat_mul(Pf, Cinv))


def signed_perm_matrix(sp: SignedPerm) -> np.ndarray:
    """The 5x5 signed permutation matrix on the hbar span."""
    M = np.zeros((5, 5), dtype=np.int64)
    for i in range(5):
        M[sp.perm[i], i] = sp.signs[sp.perm[i]]
    return M


def invariant_rank(sig: CycleSignature) -> int:
    """rank Pic^G = 1 + number of +1 cycles."""
    if sig.total() != 5:
        raise ValueError("Picard signatures act on 5 pairs")
    return 1 + sig.plus_cycles()


def invariant_rank_kernel(sp: SignedPerm) -> int:
    """Independent oracle: dim ker(M - I) on Pic_Q for the realizing matrix."""
    M = signed_perm_matrix(sp)
    return 1 + int_kernel_dim((M - np.eye(5, dtype=np.int64)).tolist())


def is_minimal(sig: CycleSignature) -> bool:
    """rank Pic^G = 1, i.e. every Frobenius cycle carries sign -1."""
    return invariant_rank(sig) == 1
