"""K-theory lattices with Euler forms: the surface K0 in (rank, c1, 2*ch2)
coordinates, the rank-7 orthogonal sublattice, weighted-line K0 Gram matrices,
Serre operators, and G-invariant rank certificates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .hyperoct import CycleSignature, SignedPerm
from .linalg import frac_inverse, int_kernel_dim, mat_mul, transpose
from .picard import K_CLASS, intersect, pair_of, pair_representatives


class DegenerateFormError(ValueError):
    pass


@dataclass(frozen=True)
class K0ClassX:
    """Class (r, c1, s2) with s2 twice the second Chern character."""

    r: int
    c1: tuple
    s2: int

    def vector(self):
        return (self.r,) + tuple(self.c1) + (self.s2,)

    @classmethod
    def from_vector(cls, v):
        return cls(int(v[0]), tuple(int(x) for x in v[1:7]), int(v[7]))


STRUCTURE_SHEAF = K0ClassX(1, (0, 0, 0, 0, 0, 0), 0)


def class_of(D) -> K0ClassX:
    """The line-bundle class (1, D, D.D)."""
    D = tuple(D)
    return K0ClassX(1, D, intersect(D, D))


def euler_x(u: K0ClassX, v: K0ClassX) -> Fraction:
    """Euler pairing chi(u, v) on the surface K0 lattice (Riemann-Roch)."""
    ru, Du, su = u.r, u.c1, u.s2
    rv, Dv, sv = v.r, v.c1, v.s2
    mixed = tuple(ru * b - rv * a for a, b in zip(Du, Dv))
    val = (Fraction(ru * rv)
           - Fraction(intersect(K_CLASS, mixed), 2)
           + Fraction(ru * sv + rv * su, 2)
           - Fraction(intersect(Du, Dv)))
    return val


def euler_vec(u, v) -> Fraction:
    return euler_x(K0ClassX.from_vector(u), K0ClassX.from_vector(v))


def full_k0_gram():
    """8x8 Euler Gram on the standard basis of Z + Pic + Z (Fraction entries)."""
    basis = [K0ClassX.from_vector(tuple(1 if i == j else 0 for j in range(8)))
             for i in range(8)]
    return [[euler_x(a, b) for b in basis] for a in basis]


def tensor_k_matrix():
    """Class map of tensoring by K with an even shift: (r, D, s2) ->
    (r, D + rK, s2 + 2 D.K + r K^2), as an 8x8 integer matrix."""
    cols = []
    k2 = intersect(K_CLASS, K_CLASS)
    e_r = (1,) + K_CLASS + (k2,)
    cols.append(e_r)
    for i in range(6):
        e = tuple(1 if j == i else 0 for j in range(6))
        cols.append((0,) + e + (2 * intersect(e, K_CLASS),))
    cols.append((0, 0, 0, 0, 0, 0, 0, 1))
    return [[cols[j][i] for j in range(8)] for i in range(8)]


def serre_from_gram(E):
    """The operator S with chi(x, y) = chi(y, Sx) for all x, y: S = E^-1 E^T."""
    n = len(E)
    Ef = [[Fraction(x) for x in row] for row in E]
    try:
        Einv = frac_inverse(Ef)
    except ZeroDivisionError as exc:
        raise DegenerateFormError("Euler form is degenerate") from exc
    return mat_mul(Einv, transpose(Ef))


# ---------------------------------------------------------------------------
# The orthogonal sublattice (numerical shadow of the structure-sheaf orthogonal)
# ---------------------------------------------------------------------------

def atom_functional(v: K0ClassX) -> Fraction:
    """chi([O], v); the sublattice is its integral kernel."""
    return euler_x(STRUCTURE_SHEAF, v)


def atom_basis():
    """Integral basis (columns, as 8-vectors) of {v : chi([O], v) = 0}; rank 7.

    b0 = (1, 0, -2) and b_i = (0, e_i, K.e_i): coordinates of (r, D, s2) in
    this basis are simply (r, D), with s2 = K.D - 2r forced.
    """
    cols = [(1, 0, 0, 0, 0, 0, 0, -2)]
    for i in range(6):
        e = tuple(1 if j == i else 0 for j in range(6))
        cols.append((0,) + e + (intersect(e, K_CLASS),))
    return cols


def atom_coords(v: K0ClassX):
    """Coordinates in the atom_basis; raises if v is not in the sublattice."""
    if atom_functional(v) != 0:
        raise ValueError("class does not pair to zero against [O]")
    return (v.r,) + tuple(v.c1)


def atom_class(coords) -> K0ClassX:
    r = coords[0]
    D = tuple(coords[1:7])
    return K0ClassX(r, D, intersect(K_CLASS, D) - 2 * r)


def atom_gram():
    """7x7 Euler Gram of the sublattice in atom_basis coordinates."""
    basis = [atom_class(tuple(1 if i == j else 0 for j in range(7)))
             for i in range(7)]
    return [[euler_x(a, b) for b in basis] for a in basis]


def atom_serre():
    return serre_from_gram(atom_gram())


def surface_zero_class_gram():
    """10x10 Euler Gram of the classes [O(-h)] ordered pairwise
    (h_1, h_1', ..., h_5, h_5')."""
    order = []
    for h in pair_representatives():
        order.append(h)
        order.append(pair_of(h))
    cls = [class_of(tuple(-x for x in h)) for h in order]
    return [[euler_x(a, b) for b in cls] for a in cls]


# ---------------------------------------------------------------------------
# Weighted-line K0
# ---------------------------------------------------------------------------

def wpl_gram(n: int):
    """Euler Gram on the basis ([O], [O_pt], [S_1..S_n]) of a weighted line
    with n weight-2 points."""
    if n < 1:
        raise ValueError("need at least one weighted point")
    size = 2 + n
    G = [[0] * size for _ in range(size)]
    G[0][0] = 1
    G[0][1] = 1
    for j in range(n):
        G[0][2 + j] = 1
    G[1][0] = -1
    for j in range(n):
        G[2 + j][2 + j] = 1
    return G


def wpl_pair_gram(n: int):
    """Euler Gram on the 2n simples ordered (S_1, S_1', ..., S_n, S_n'),
    with [S_i'] = [O_pt] - [S_i], derived from wpl_gram(n)."""
    G = wpl_gram(n)
    size = 2 + n

    def vec(i, primed):
        v = [0] * size
        if primed:
            v[1] = 1
            v[2 + i] = -1
        else:
            v[2 + i] = 1
        return v

    basis = []
    for i in range(n):
        basis.append(vec(i, False))
        basis.append(vec(i, True))
    out = [[sum(a[x] * G[x][y] * b[y] for x in range(size) for y in range(size))
            for b in basis] for a in basis]
    return out


def orbit_sum_self_pairing(n: int, orbit):
    """chi(e, e) for e the sum of the simples S_j, j in orbit (one per point)."""
    G = wpl_gram(n)
    size = 2 + n
    e = [0] * size
    for j in orbit:
        e[2 + j] = 1
    return sum(e[x] * G[x][y] * e[y] for x in range(size) for y in range(size))


def point_class_self_pairing(n: int):
    G = wpl_gram(n)
    size = 2 + n
    f = [0] * size
    f[1] = 1
    return sum(f[x] * G[x][y] * f[y] for x in range(size) for y in range(size))


# ---------------------------------------------------------------------------
# G-invariant ranks
# ---------------------------------------------------------------------------

_SPACES = ("picard", "wpl", "torsion", "surface-k0")


def _action_matrix(sp: SignedPerm, space: str):
    """Integer matrix of the signature action on the chosen lattice.

    The action fixes [O] and [O_pt] and permutes the simples per the signed
    permutation, a -1 sign swapping S -> [O_pt] - S at the target point.
    """
    n = len(sp.perm)
    if space == "picard":
        M = np.zeros((1 + n, 1 + n), dtype=np.int64)
        M[0, 0] = 1
        for i in range(n):
            M[1 + sp.perm[i], 1 + i] = sp.signs[sp.perm[i]]
        return M
    if space == "surface-k0":
        # basis: rank, K, hbar_1..hbar_n, second Z summand
        M = np.zeros((3 + n, 3 + n), dtype=np.int64)
        M[0, 0] = 1
        M[1, 1] = 1
        M[2 + n, 2 + n] = 1
        for i in range(n):
            M[2 + sp.perm[i], 2 + i] = sp.signs[sp.perm[i]]
        return M
    if space == "wpl":
        size = 2 + n
        M = np.zeros((size, size), dtype=np.int64)
        M[0, 0] = 1
        M[1, 1] = 1
        for i in range(n):
            j = sp.perm[i]
            if sp.signs[j] == 1:
                M[2 + j, 2 + i] = 1
            else:
                M[2 + j, 2 + i] = -1
                M[1, 2 + i] = 1
        return M
    if space == "torsion":
        size = 1 + n
        M = np.zeros((size, size), dtype=np.int64)
        M[0, 0] = 1
        for i in range(n):
            j = sp.perm[i]
            if sp.signs[j] == 1:
                M[1 + j, 1 + i] = 1
            else:
                M[1 + j, 1 + i] = -1
                M[0, 1 + i] = 1
        return M
    raise ValueError(f"space must be one of {_SPACES}")


def invariant_rank_of_action(sp: SignedPerm, space: str) -> int:
    """dim ker(M - I) for the realized action (exact integer linear algebra)."""
    M = _action_matrix(sp, space)
    n = M.shape[0]
    return int_kernel_dim((M - np.eye(n, dtype=np.int64)).tolist())


def closed_form_rank(sig: CycleSignature, space: str, n: int | None = None) -> int:
    plus = sig.plus_cycles()
    if space == "picard":
        return 1 + plus
    if space == "wpl":
        return 2 + plus
    if space == "torsion":
        return 1 + plus
    if space == "surface-k0":
        return 3 + plus
    raise ValueError(f"space must be one of {_SPACES}")


def g_invariant_rank(sig: CycleSignature, space: str, n: int | None = None) -> int:
    """Rank of the G-invariant part of the chosen lattice, by exact kernel
    computation on a realizing signed permutation."""
    if n is None:
        n = sig.total()
    if sig.total() != n:
        raise ValueError("signature does not act on the requested number of points")
    rank = invariant_rank_of_action(sig.representative(), space)
    assert rank == closed_form_rank(sig, space, n)
    return rank


def conic_bundle_ranks(n: int, sig: CycleSignature, relatively_minimal: bool):
    """Invariant-rank bookkeeping for a conic bundle with n degenerate fibres:
    the curve contributes rank 2 and the fibre simples 2 + #plus-cycles."""
    if sig.total() != n:
        raise ValueError("signature cycles must sum to the number of degenerate fibres")
    if relatively_minimal and sig.plus_cycles() > 0:
        raise ValueError("a relatively minimal action admits no +1 cycles on the fibres")
    atom_rank = g_invariant_rank(sig, "wpl", n)
    return {"k0x_rank": atom_rank + 2, "atom_rank": atom_rank}
