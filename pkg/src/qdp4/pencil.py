"""Quadric-pencil analysis: discriminant quintic, smoothness, simultaneous
diagonalization, degenerate points, Galois signatures, and point counting."""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

import numpy as np

from . import _accel
from .fields import (GF, QQ, FieldMismatchError, Poly, UnsupportedFieldError,
                     embed, embed_poly, factor, is_square, rational_roots,
                     scalar_from_json, scalar_key, scalar_to_json, squarefree)
from .hyperoct import CycleSignature, permutation_parity
from .linalg import congruence, kernel_vector, rank
from .wpline import (Moebius, PointConfiguration, ProjPoint,
                     moebius_to_inf_zero_one, pgl2_match)

POINTCOUNT_GUARD = 250
POINTCOUNT_GUARD_ENV = "QDP4_POINTCOUNT_GUARD"


class DegeneratePencilError(ValueError):
    """The two matrices span less than a pencil."""


class NotSmoothError(ValueError):
    """The discriminant quintic has a repeated root."""


class UnsupportedSplittingError(UnsupportedFieldError):
    """Degenerate points are not rational over any supported field."""


class ResourceLimitError(RuntimeError):
    """Enumeration size guard exceeded."""


class InvalidNormalFormError(ValueError):
    """(lambda, mu) violates the normal-form constraints."""


class QuadricPencil:
    """A pencil t0*A - t1*B of quadrics in P^4 over an exact field."""

    __slots__ = ("field", "A", "B", "_cache")

    def __init__(self, field, A, B):
        A = tuple(tuple(field(x) if isinstance(x, int) else x for x in row) for row in A)
        B = tuple(tuple(field(x) if isinstance(x, int) else x for x in row) for row in B)
        if len(A) != 5 or len(B) != 5 or any(len(r) != 5 for r in A + B):
            raise ValueError("pencil matrices must be 5x5")
        for M in (A, B):
            for i in range(5):
                for j in range(i):
                    if M[i][j] != M[j][i]:
                        raise ValueError("pencil matrices must be symmetric")
        flat = [list(itertools.chain.from_iterable(A)),
                list(itertools.chain.from_iterable(B))]
        if rank(flat, field) < 2:
            raise DegeneratePencilError("matrices are proportional")
        self.field = field
        self.A = A
        self.B = B
        self._cache = {}  # memoized derived data; all results are pure

    def to_json(self):
        return {"field": self.field.descriptor(),
                "A": [[scalar_to_json(x) for x in row] for row in self.A],
                "B": [[scalar_to_json(x) for x in row] for row in self.B]}

    @classmethod
    def from_json(cls, obj, field=None):
        from .fields import field_from_descriptor
        if field is None:
            field = field_from_descriptor(obj["field"])
        A = [[scalar_from_json(field, x) for x in row] for row in obj["A"]]
        B = [[scalar_from_json(field, x) for x in row] for row in obj["B"]]
        return cls(field, A, B)

    def __repr__(self):
        return f"QuadricPencil(field={self.field!r})"


@dataclass(frozen=True)
class NormalForm:
    """The pair (lambda, mu): degenerate points at infinity, 0, 1, lambda, mu."""

    lam: object
    mu: object

    def __post_init__(self):
        if _is_zero(self.lam) or _is_zero(self.mu):
            raise InvalidNormalFormError("lambda, mu must avoid 0")
        if _is_zero(self.lam - _one_like(self.lam)) or _is_zero(self.mu - _one_like(self.mu)):
            raise InvalidNormalFormError("lambda, mu must avoid 1")
        if _is_zero(self.lam - self.mu):
            raise InvalidNormalFormError("lambda and mu must differ")

    def pair(self):
        return (self.lam, self.mu)

    def sort_key(self):
        return (scalar_key(self.lam), scalar_key(self.mu))

    def to_json(self):
        return [scalar_to_json(self.lam), scalar_to_json(self.mu)]


def _is_zero(x):
    return x == 0 if isinstance(x, Fraction) else x.is_zero()


def _one_like(x):
    return Fraction(1) if isinstance(x, Fraction) else x.field.one


@dataclass(frozen=True)
class DegeneratePoint:
    """A corank-1 member: its parameter point, residue degree, and the four
    nonzero diagonal entries in simultaneously diagonalizing coordinates."""

    point: ProjPoint
    residue_degree: int
    diagonal_entries: tuple


# ---------------------------------------------------------------------------
# Discriminant and smoothness
# ---------------------------------------------------------------------------

def discriminant_quintic(P: QuadricPencil):
    """Coefficients (c0..c5) of det(t0*A - t1*B) with c_i on t0^(5-i) t1^i."""
    cached = P._cache.get("quintic")
    if cached is not None:
        return cached
    field = P.field
    coeffs = [field.zero] * 6
    for perm in itertools.permutations(range(5)):
        sign = permutation_parity(perm)
        prod = [field.one]
        for i in range(5):
            a = P.A[i][perm[i]]
            b = -P.B[i][perm[i]]
            new = [field.zero] * (len(prod) + 1)
            for d, c in enumerate(prod):
                if not _is_zero(c):
                    new[d] = new[d] + c * a
                    new[d + 1] = new[d + 1] + c * b
            prod = new
        if sign > 0:
            coeffs = [x + y for x, y in zip(coeffs, prod)]
        else:
            coeffs = [x - y for x, y in zip(coeffs, prod)]
    out = tuple(coeffs)
    P._cache["quintic"] = out
    return out


def charts(P: QuadricPencil):
    """Affine charts of the binary quintic: g(z) = F(1, z) and h(u) = F(u, 1)."""
    cs = discriminant_quintic(P)
    g = Poly(P.field, cs)
    h = Poly(P.field, tuple(reversed(cs)))
    return g, h


def is_smooth(P: QuadricPencil) -> bool:
    """Squarefreeness of the binary quintic on both affine charts."""
    cached = P._cache.get("smooth")
    if cached is None:
        g, h = charts(P)
        if g.is_zero():
            cached = False
        else:
            cached = squarefree(g) and squarefree(h)
        P._cache["smooth"] = cached
    return cached


# ---------------------------------------------------------------------------
# Degenerate points over the splitting field
# ---------------------------------------------------------------------------

def splitting_field(P: QuadricPencil):
    """Smallest field over which all five degenerate points are rational."""
    cached = P._cache.get("splitting")
    if cached is not None:
        return cached
    g, _ = charts(P)
    field = P.field
    if field.is_rational:
        rr = rational_roots(g) if g.degree >= 1 else []
        if sum(m for _, m in rr) != g.degree:
            raise UnsupportedSplittingError(
                "quintic does not split over Q; reduce the pencil modulo an odd "
                "prime to compute over a finite field")
        out = QQ
    else:
        degs = [f.degree for f, _ in factor(g)] if g.degree >= 1 else []
        m = lcm(*degs) if degs else 1
        out = field if m == 1 else GF(field.p, field.k * m)
    P._cache["splitting"] = out
    return out


def degenerate_parameter_points(P: QuadricPencil, dst=None):
    """The five degenerate parameter points, sorted, over dst (default: splitting field)."""
    if not is_smooth(P):
        raise NotSmoothError("pencil has a repeated degenerate point")
    if dst is None:
        dst = splitting_field(P)
    cached = P._cache.get(("points", dst))
    if cached is not None:
        return list(cached)
    g, _ = charts(P)
    pts = []
    if g.degree < 5:
        pts.append(ProjPoint.infinity(dst))
    field = P.field
    if field.is_rational:
        for root, mult in rational_roots(g):
            pts.extend([ProjPoint.affine(dst, root)] * mult)
    else:
        gd = embed_poly(g, dst)
        for lin, mult in factor(gd):
            if lin.degree != 1:
                raise UnsupportedSplittingError("destination field does not split the quintic")
            pts.extend([ProjPoint.affine(dst, -lin.coeffs[0])] * mult)
    if len(pts) != 5 or len(set(pts)) != 5:
        raise NotSmoothError("pencil has a repeated degenerate point")
    pts.sort(key=lambda p: p.sort_key())
    P._cache[("points", dst)] = tuple(pts)
    return pts


def point_configuration(P: QuadricPencil, dst=None) -> PointConfiguration:
    pts = degenerate_parameter_points(P, dst)
    return PointConfiguration(pts[0].field, pts)


def simultaneous_diagonalize(P: QuadricPencil):
    """Congruence M with M^T A M, M^T B M diagonal, over the splitting field.

    Returns (M, pairs, points): column i of M spans the kernel of the member
    at points[i], and pairs[i] = (a_i, b_i) are the diagonal entries, with
    (t0 : t1) = (b_i : a_i) the i-th degenerate point.
    """
    pts = degenerate_parameter_points(P)
    dst = pts[0].field
    A = [[embed(x, dst) for x in row] for row in P.A]
    B = [[embed(x, dst) for x in row] for row in P.B]
    cols = []
    for p in pts:
        t0, t1 = p.v, p.u
        Q = [[t0 * A[i][j] - t1 * B[i][j] for j in range(5)] for i in range(5)]
        v = kernel_vector(Q, dst)
        if v is None:
            raise NotSmoothError("member unexpectedly nondegenerate")
        cols.append(v)
    M = [[cols[j][i] for j in range(5)] for i in range(5)]
    MA = congruence(M, A)
    MB = congruence(M, B)
    for i in range(5):
        for j in range(5):
            if i != j and (not _is_zero(MA[i][j]) or not _is_zero(MB[i][j])):
                raise NotSmoothError("simultaneous diagonalization failed")
    pairs = [(MA[i][i], MB[i][i]) for i in range(5)]
    for i, p in enumerate(pts):
        a, b = pairs[i]
        if not _is_zero(a * p.v - b * p.u):
            raise NotSmoothError("diagonal pair does not match its degenerate point")
    return M, pairs, pts


def degenerate_points(P: QuadricPencil):
    """Rich degenerate-point records over the splitting field."""
    M, pairs, pts = simultaneous_diagonalize(P)
    base = P.field
    g, _ = charts(P)
    res_deg = {}
    if base.is_rational:
        for p in pts:
            res_deg[p] = 1
    else:
        dst = pts[0].field
        if g.degree < 5:
            res_deg[ProjPoint.infinity(dst)] = 1
        for f, _ in factor(g):
            fd = embed_poly(f, dst)
            for lin, _ in factor(fd):
                res_deg[ProjPoint.affine(dst, -lin.coeffs[0])] = f.degree
    out = []
    for i, p in enumerate(pts):
        entries = []
        for j in range(5):
            if j == i:
                continue
            a, b = pairs[j]
            entries.append(a * p.v - b * p.u)
        if any(_is_zero(e) for e in entries):
            raise NotSmoothError("member has corank > 1")
        out.append(DegeneratePoint(p, res_deg[p], tuple(entries)))
    return out


# ---------------------------------------------------------------------------
# Normal forms and the canonical invariant
# ---------------------------------------------------------------------------

def normal_form(P: QuadricPencil, ordering=(0, 1, 2, 3, 4)) -> NormalForm:
    """Images of points 4, 5 under the Moebius map sending points 1, 2, 3 to
    infinity, 0, 1 (points indexed by `ordering` into the sorted point list)."""
    pts = degenerate_parameter_points(P)
    if sorted(ordering) != [0, 1, 2, 3, 4]:
        raise ValueError("ordering must be a permutation of 0..4")
    ref = [pts[i] for i in ordering]
    m = moebius_to_inf_zero_one(ref[0], ref[1], ref[2])
    return NormalForm(m(ref[3]).affine_value(), m(ref[4]).affine_value())


def _invariant_of_points(pts):
    # raw-coordinate version of the 120-ordering orbit: for each ordered
    # triple the map to (oo, 0, 1) is applied to the remaining two points
    uv = [(p.u, p.v) for p in pts]
    seen = set()
    for i, j, k in itertools.permutations(range(5), 3):
        (u1, v1), (u2, v2), (u3, v3) = uv[i], uv[j], uv[k]
        c, d = v1, -u1           # row killing point i (to infinity)
        a, b = v2, -u2           # row killing point j (to zero)
        t = (c * u3 + d * v3) / (a * u3 + b * v3)  # scale sending point k to 1
        rest = [m for m in range(5) if m not in (i, j, k)]
        vals = []
        for m in rest:
            um, vm = uv[m]
            vals.append((t * (a * um + b * vm)) / (c * um + d * vm))
        seen.add((vals[0], vals[1]))
        seen.add((vals[1], vals[0]))
    out = [NormalForm(lam, mu) for lam, mu in seen]
    out.sort(key=NormalForm.sort_key)
    return tuple(out)


def canonical_invariant(P: QuadricPencil, dst=None):
    """The sorted orbit of (lambda, mu) over all 120 orderings; a complete
    isomorphism invariant of the underlying five-point configuration."""
    return _invariant_of_points(degenerate_parameter_points(P, dst))


@dataclass(frozen=True)
class IsoCertificate:
    moebius: Moebius
    base_rational: bool  # entries lie in the common base field


def isomorphic(P1: QuadricPencil, P2: QuadricPencil):
    """A Moebius certificate mapping degenerate points of P1 onto those of P2,
    or None when the canonical invariants differ."""
    f1, f2 = P1.field, P2.field
    if f1.is_rational != f2.is_rational:
        raise FieldMismatchError("pencils live over different characteristics")
    if f1.is_rational:
        common = QQ
    else:
        if f1.p != f2.p:
            raise FieldMismatchError("pencils live over different characteristics")
        s1, s2 = splitting_field(P1), splitting_field(P2)
        common = GF(f1.p, lcm(s1.k, s2.k))
    inv1 = canonical_invariant(P1, common)
    inv2 = canonical_invariant(P2, common)
    if [nf.pair() for nf in inv1] != [nf.pair() for nf in inv2]:
        return None
    c1 = point_configuration(P1, common)
    c2 = point_configuration(P2, common)
    m = pgl2_match(c1, c2)
    if m is None:  # equal invariants always admit a matching
        return None
    if common.is_rational:
        base_rational = True
    else:
        base_rational = m.entries_in_subfield(min(f1.k, f2.k))
    return IsoCertificate(m, base_rational)


def reconstruct(nf, field) -> QuadricPencil:
    """The diagonal pencil with degenerate points infinity, 0, 1, lambda, mu."""
    if isinstance(nf, NormalForm):
        lam, mu = nf.lam, nf.mu
    else:
        lam, mu = nf
    lam = field(lam) if isinstance(lam, int) else lam
    mu = field(mu) if isinstance(mu, int) else mu
    NormalForm(lam, mu)  # validates the constraints
    one, zero = field.one, field.zero
    A = [[zero] * 5 for _ in range(5)]
    B = [[zero] * 5 for _ in range(5)]
    for i, v in enumerate((one, zero, one, lam, mu)):
        A[i][i] = v
    for i, v in enumerate((zero, one, one, one, one)):
        B[i][i] = v
    return QuadricPencil(field, A, B)


# ---------------------------------------------------------------------------
# Galois signature
# ---------------------------------------------------------------------------

def _det(mat, field):
    n = len(mat)
    total = field.zero
    for perm in itertools.permutations(range(n)):
        term = field.one
        for i in range(n):
            term = term * mat[i][perm[i]]
        total = total + term if permutation_parity(perm) > 0 else total - term
    return total


def _corank1_discriminant(Q, field):
    """Determinant of the form induced on the quotient by the 1-dim radical."""
    v = kernel_vector(Q, field)
    if v is None:
        raise NotSmoothError("expected a corank-1 member")
    i0 = next(i for i in range(5) if not _is_zero(v[i]))
    idxs = [j for j in range(5) if j != i0]
    G = [[Q[a][b] for b in idxs] for a in idxs]
    d = _det(G, field)
    if _is_zero(d):
        raise NotSmoothError("member has corank > 1")
    return d


def ruling_sign(Q, field) -> int:
    """+1 iff the rank-4 discriminant of the corank-1 member is a square in field."""
    return 1 if is_square(_corank1_discriminant(Q, field)) else -1


def galois_signature(P: QuadricPencil) -> CycleSignature:
    """Frobenius cycle lengths on the degenerate points with per-cycle
    ruling-swap signs (prime fields; trivial over Q for split pencils)."""
    field = P.field
    if not is_smooth(P):
        raise NotSmoothError("signature is defined for smooth pencils only")
    if field.is_rational:
        splitting_field(P)  # raises when not split
        return CycleSignature.trivial()
    if field.k != 1:
        raise UnsupportedFieldError("galois_signature expects a prime-field pencil")
    p = field.p
    g, _ = charts(P)
    cycles = []
    if g.degree < 5:
        Q = [[-x for x in row] for row in P.B]  # member at (t0 : t1) = (0 : 1)
        cycles.append((1, ruling_sign(Q, field)))
    for irr, _ in factor(g):
        m = irr.degree
        K = GF(p, m) if m > 1 else field
        if m == 1:
            root = -irr.coeffs[0]
        else:
            lin = sorted((f for f, _ in factor(embed_poly(irr, K)) if f.degree == 1),
                         key=lambda f: scalar_key(-f.coeffs[0]))
            root = -lin[0].coeffs[0]
        AK = [[embed(x, K) for x in row] for row in P.A]
        BK = [[embed(x, K) for x in row] for row in P.B]
        Q = [[AK[i][j] - root * BK[i][j] for j in range(5)] for i in range(5)]
        cycles.append((m, ruling_sign(Q, K)))
    return CycleSignature(tuple(cycles))


# ---------------------------------------------------------------------------
# Point counting (Lefschetz oracle)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _encoded_tables(p: int, k: int):
    """Addition and multiplication tables for F_{p^k} encoded as 0..q-1
    (element sum c_i x^i encoded as sum c_i p^i)."""
    q = p ** k
    if k == 1:
        a = np.arange(q, dtype=np.int64)
        add = (a[:, None] + a[None, :]) % p
        mul = (a[:, None] * a[None, :]) % p
        return add.astype(np.int64), mul.astype(np.int64)
    field = GF(p, k)
    digits = np.zeros((q, k), dtype=np.int64)
    e = np.arange(q)
    for i in range(k):
        digits[:, i] = (e // p ** i) % p
    add = np.zeros((q, q), dtype=np.int64)
    for i in range(k):
        add += ((digits[:, None, i] + digits[None, :, i]) % p) * p ** i
    elems = [field(tuple(int(digits[e0, i]) for i in range(k))) for e0 in range(q)]
    enc = {el: i for i, el in enumerate(elems)}
    # multiplicative generator by order test
    def prime_factors(n):
        fs = set()
        d = 2
        while d * d <= n:
            while n % d == 0:
                fs.add(d)
                n //= d
            d += 1
        if n > 1:
            fs.add(n)
        return fs
    pf = prime_factors(q - 1)
    gen = None
    for cand in elems[1:]:
        if all(cand ** ((q - 1) // ell) != field.one for ell in pf):
            gen = cand
            break
    log = np.zeros(q, dtype=np.int64)
    antilog = np.zeros(q - 1, dtype=np.int64)
    cur = field.one
    for i in range(q - 1):
        ec = enc[cur]
        antilog[i] = ec
        log[ec] = i
        cur = cur * gen
    mul = np.zeros((q, q), dtype=np.int64)
    li = log[1:]
    mul[1:, 1:] = antilog[(li[:, None] + li[None, :]) % (q - 1)]
    return add, mul


def _encode_form(M, p: int) -> np.ndarray:
    """Upper-triangular encoded coefficients of x^T M x over F_p."""
    C = np.zeros((5, 5), dtype=np.int64)
    for i in range(5):
        C[i, i] = M[i][i].coeffs[0] % p
        for j in range(i + 1, 5):
            C[i, j] = (2 * M[i][j].coeffs[0]) % p
    return C


def pointcount_guard() -> int:
    return int(os.environ.get(POINTCOUNT_GUARD_ENV, POINTCOUNT_GUARD))


def count_points(P: QuadricPencil, k: int, force=None) -> int:
    """|X(F_{p^k})| by enumerating P^4(F_{p^k}) and testing both quadrics."""
    field = P.field
    if field.is_rational or field.k != 1:
        raise UnsupportedFieldError("count_points expects a prime-field pencil")
    if not is_smooth(P):
        raise NotSmoothError("point counts are certified for smooth pencils only")
    p = field.p
    q = p ** k
    guard = pointcount_guard()
    if q > guard:
        raise ResourceLimitError(
            f"p^k = {q} exceeds the enumeration guard {guard} "
            f"(override with {POINTCOUNT_GUARD_ENV})")
    add, mul = _encoded_tables(p, k)
    CA = _encode_form(P.A, p)
    CB = _encode_form(P.B, p)
    return _accel.count_zero_pairs(CA, CB, add, mul, q, force=force)


def predicted_count(sig: CycleSignature, p: int, k: int) -> int:
    """Lefschetz trace prediction p^(2k) + p^k (1 + tr(sigma^k)) + 1."""
    return p ** (2 * k) + p ** k * (1 + sig.trace_power(k)) + 1
