"""Signed permutations on 5 pairs: the hyperoctahedral group, its even subgroup,
the central splitting, cycle signatures, and the automorphism fiber product."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .wpline import Moebius


class FiberMismatchError(ValueError):
    """Signed permutation and Moebius part induce different permutations."""


class InvalidGroupInputError(ValueError):
    """The supplied automorphism list is not closed under composition."""


@dataclass(frozen=True)
class SignedPerm:
    """Pair (perm, signs) acting on pairs (i, s) by (i, s) -> (perm[i], s * signs[perm[i]]).

    perm is a 0-based image tuple; signs is a tuple in {+1, -1}^5 indexed by
    target slot.  Composition is composition of these actions.
    """

    perm: tuple
    signs: tuple

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)) or len(self.signs) != n:
            raise ValueError("invalid signed permutation")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    @classmethod
    def identity(cls, n: int = 5):
        return cls(tuple(range(n)), (1,) * n)

    @classmethod
    def central_flip(cls, n: int = 5):
        """The all-signs-flip element c: odd, central, of order 2."""
        return cls(tuple(range(n)), (-1,) * n)

    def compose(self, other: "SignedPerm") -> "SignedPerm":
        """self after other."""
        sigma, eps = self.perm, self.signs
        tau, delta = other.perm, other.signs
        n = len(sigma)
        perm = tuple(sigma[tau[i]] for i in range(n))
        inv_sigma = [0] * n
        for i, im in enumerate(sigma):
            inv_sigma[im] = i
        signs = tuple(eps[j] * delta[inv_sigma[j]] for j in range(n))
        return SignedPerm(perm, signs)

    def __mul__(self, other):
        return self.compose(other)

    def inverse(self) -> "SignedPerm":
        n = len(self.perm)
        inv = [0] * n
        for i, im in enumerate(self.perm):
            inv[im] = i
        signs = tuple(self.signs[self.perm[j]] for j in range(n))
        return SignedPerm(tuple(inv), signs)

    def act(self, pair):
        i, s = pair
        j = self.perm[i]
        return (j, s * self.signs[j])

    def is_even(self) -> bool:
        """Parity of the induced permutation of the 10-element doubled set."""
        return self.signs.count(-1) % 2 == 0

    def is_identity(self) -> bool:
        return self == SignedPerm.identity(len(self.perm))

    def to_json(self):
        return {"perm": [i + 1 for i in self.perm], "signs": list(self.signs)}

    @classmethod
    def from_json(cls, obj):
        return cls(tuple(i - 1 for i in obj["perm"]), tuple(obj["signs"]))


def retract(a: SignedPerm) -> SignedPerm:
    """Projection B5 -> D5 killing the central flip: a if even, c*a otherwise."""
    if a.is_even():
        return a
    return SignedPerm(a.perm, tuple(-s for s in a.signs))


def doubled_permutation(a: SignedPerm):
    """The induced permutation of the 10 points (i, +1), (i, -1), as an image tuple.

    Point (i, s) is indexed 2*i for s = +1 and 2*i + 1 for s = -1.
    """
    images = []
    for i in range(len(a.perm)):
        for s in (1, -1):
            j, t = a.act((i, s))
            images.append(2 * j + (0 if t == 1 else 1))
    return tuple(images)


def permutation_parity(images) -> int:
    """+1 for even, -1 for odd, by cycle counting."""
    seen = [False] * len(images)
    parity = 1
    for i in range(len(images)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = images[j]
            length += 1
        if length % 2 == 0:
            parity = -parity
    return parity


@lru_cache(maxsize=None)
def all_signed_perms(n: int = 5):
    """All 2^n * n! signed permutations, in a fixed deterministic order."""
    out = []
    for perm in itertools.permutations(range(n)):
        for mask in range(2 ** n):
            signs = tuple(-1 if (mask >> j) & 1 else 1 for j in range(n))
            out.append(SignedPerm(perm, signs))
    return tuple(out)


@lru_cache(maxsize=None)
def even_signed_perms(n: int = 5):
    return tuple(a for a in all_signed_perms(n) if a.is_even())


@dataclass(frozen=True)
class CycleSignature:
    """Conjugacy data: per-cycle (length, sign) pairs, canonically sorted."""

    cycles: tuple

    def __post_init__(self):
        if any(length < 1 or sign not in (1, -1) for length, sign in self.cycles):
            raise ValueError("invalid cycle data")
        canon = tuple(sorted(self.cycles, key=lambda ls: (-ls[0], -ls[1])))
        object.__setattr__(self, "cycles", canon)

    @classmethod
    def from_signed_perm(cls, a: SignedPerm) -> "CycleSignature":
        n = len(a.perm)
        seen = [False] * n
        cycles = []
        for i in range(n):
            if seen[i]:
                continue
            j = i
            sign = 1
            length = 0
            while not seen[j]:
                seen[j] = True
                sign *= a.signs[j]
                j = a.perm[j]
                length += 1
            cycles.append((length, sign))
        return cls(tuple(cycles))

    @classmethod
    def trivial(cls, n: int = 5) -> "CycleSignature":
        return cls(((1, 1),) * n)

    def total(self) -> int:
        return sum(length for length, _ in self.cycles)

    def plus_cycles(self) -> int:
        return sum(1 for _, sign in self.cycles if sign == 1)

    def trace_power(self, k: int) -> int:
        """Trace of the k-th power of a realizing signed permutation matrix."""
        tr = 0
        for length, sign in self.cycles:
            if k % length == 0:
                tr += length * (sign ** (k // length))
        return tr

    def representative(self) -> SignedPerm:
        """A signed permutation with this signature (minus sign on the closing step)."""
        perm = []
        signs = []
        for length, sign in self.cycles:
            base = len(perm)
            perm.extend(base + (j + 1) % length for j in range(length))
            signs.extend([1] * length)
            if sign == -1:
                signs[base] = -1  # closing step base+length-1 -> base carries the flip
        return SignedPerm(tuple(perm), tuple(signs))

    def to_json(self):
        return [list(c) for c in self.cycles]

    @classmethod
    def from_json(cls, obj):
        return cls(tuple((int(a), int(b)) for a, b in obj))


@dataclass(frozen=True)
class FiberElement:
    """An automorphism datum: even signed permutation over the same S5 image as
    a Moebius stabilizer element."""

    signed: SignedPerm
    moebius: Moebius
    perm: tuple  # common S5 image

    def __post_init__(self):
        if self.signed.perm != tuple(self.perm):
            raise FiberMismatchError("signed part does not lie over the S5 image")
        if not self.signed.is_even():
            raise FiberMismatchError("fiber elements carry even signed permutations")


def _even_sign_vectors(n: int = 5):
    out = []
    for mask in range(2 ** n):
        if bin(mask).count("1") % 2 == 0:
            out.append(tuple(-1 if (mask >> j) & 1 else 1 for j in range(n)))
    return out


def fiber_product(aut_p):
    """All pairs (even signed perm over rho, moebius with image rho).

    aut_p is a list of (Moebius, S5 image) pairs as produced by
    wpline.aut_group; the result has exactly 16 * len(aut_p) elements.
    """
    perms = [tuple(perm) for _, perm in aut_p]
    if tuple(range(5)) not in perms:
        raise InvalidGroupInputError("aut_p is not a group: identity missing")
    perm_set = set(perms)
    if len(perm_set) != len(perms):
        raise InvalidGroupInputError("aut_p is not a group: repeated S5 image")
    for p1 in perm_set:
        for p2 in perm_set:
            if tuple(p1[p2[i]] for i in range(5)) not in perm_set:
                raise InvalidGroupInputError(
                    "aut_p is not a group: S5 images not closed under composition")
    out = []
    for moebius, perm in aut_p:
        for signs in _even_sign_vectors(5):
            out.append(FiberElement(SignedPerm(tuple(perm), signs), moebius,
                                    tuple(perm)))
    return out


def retract_fiber(signed: SignedPerm, moebius: Moebius, perm) -> FiberElement:
    """Even-part projection on the signed coordinate, same Moebius part."""
    if signed.perm != tuple(perm):
        raise FiberMismatchError("incompatible pair: underlying permutations differ")
    return FiberElement(retract(signed), moebius, tuple(perm))


def aut0_matrices():
    """The 16 diagonal +-1 matrices modulo global sign (first entry +1)."""
    out = []
    for mask in range(2 ** 4):
        diag = [1] + [(-1 if (mask >> j) & 1 else 1) for j in range(4)]
        out.append(tuple(tuple(diag[i] if i == j else 0 for j in range(5))
                         for i in range(5)))
    return out


# --- integer encodings for the exhaustive suites ----------------------------

@lru_cache(maxsize=None)
def index_tables():
    """Encoded composition data for B5: element index = 32 * perm_index + sign_mask.

    Returns (perms, perm_mul, mask_apply, retract_mask):
      perms[i]          the i-th permutation (lex order over image tuples)
      perm_mul[a, b]    index of perms[a] o perms[b]
      mask_apply[a, m]  the mask m' with bit_j(m') = bit_{perms[a]^-1(j)}(m)
      retract_mask[m]   m with all bits flipped when popcount(m) is odd
    """
    perms = list(itertools.permutations(range(5)))
    pindex = {p: i for i, p in enumerate(perms)}
    perm_mul = np.zeros((120, 120), dtype=np.int64)
    for a, pa in enumerate(perms):
        for b, pb in enumerate(perms):
            perm_mul[a, b] = pindex[tuple(pa[pb[i]] for i in range(5))]
    mask_apply = np.zeros((120, 32), dtype=np.int64)
    for a, pa in enumerate(perms):
        inv = [0] * 5
        for i, im in enumerate(pa):
            inv[im] = i
        for m in range(32):
            out = 0
            for j in range(5):
                if (m >> inv[j]) & 1:
                    out |= 1 << j
            mask_apply[a, m] = out
    retract_mask = np.array([m ^ 31 if bin(m).count("1") % 2 else m
                             for m in range(32)], dtype=np.int64)
    return perms, perm_mul, mask_apply, retract_mask


def signed_perm_index(a: SignedPerm) -> int:
    perms, _, _, _ = index_tables()
    pidx = perms.index(a.perm)
    mask = sum(1 << j for j in range(5) if a.signs[j] == -1)
    return 32 * pidx + mask


def signed_perm_from_index(e: int) -> SignedPerm:
    perms, _, _, _ = index_tables()
    pidx, mask = divmod(e, 32)
    signs = tuple(-1 if (mask >> j) & 1 else 1 for j in range(5))
    return SignedPerm(perms[pidx], signs)
