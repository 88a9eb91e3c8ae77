"""Exact arithmetic over Q, F_p and F_{p^k}, plus univariate polynomial operations.

Rational scalars are `fractions.Fraction`; finite-field scalars are `FFElem`
(coefficient vectors modulo a canonical irreducible modulus).  All values are
immutable and all operations are pure.
"""

from __future__ import annotations

import hashlib
import random
from fractions import Fraction
from functools import lru_cache


class FieldMismatchError(ValueError):
    """Operands belong to different fields."""


class DegenerateInputError(ValueError):
    """Zero input where a nonzero one is required."""


class UnsupportedFieldError(ValueError):
    """Operation not available over this field."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# Fields
# ---------------------------------------------------------------------------

class RationalField:
    """The field Q.  Elements are fractions.Fraction."""

    is_rational = True
    p = 0
    k = 1
    characteristic = 0

    def __call__(self, value) -> Fraction:
        if isinstance(value, FFElem):
            raise FieldMismatchError("cannot coerce a finite-field element into Q")
        return Fraction(value)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def descriptor(self) -> dict:
        return {"kind": "rationals"}

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


QQ = RationalField()


class FFElem:
    """Element of F_{p^k}, stored as a length-k coefficient tuple (low degree first)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: "FiniteField", coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def _check(self, other) -> "FFElem":
        if not isinstance(other, FFElem):
            if isinstance(other, int):
                return self.field(other)
            raise FieldMismatchError(f"cannot combine {self!r} with {other!r}")
        if other.field is not self.field:
            raise FieldMismatchError(
                f"descriptor mismatch: {self.field!r} vs {other.field!r}")
        return other

    def __add__(self, other):
        other = self._check(other)
        p = self.field.p
        return FFElem(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FFElem(self.field, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        other = self._check(other)
        p = self.field.p
        return FFElem(self.field, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        f = self.field
        if f.k == 1:
            return FFElem(f, ((self.coeffs[0] * other.coeffs[0]) % f.p,))
        return FFElem(f, f._mul_vec(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "FFElem":
        f = self.field
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in " + repr(f))
        if f.k == 1:
            return FFElem(f, (pow(self.coeffs[0], f.p - 2, f.p),))
        return FFElem(f, _ext_euclid_inverse(self.coeffs, f.modulus, f.p, f.k))

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.field(other) / self

    def __pow__(self, n: int):
        f = self.field
        if n < 0:
            return self.inverse() ** (-n)
        if f.k == 1:
            return FFElem(f, (pow(self.coeffs[0], n, f.p),))
        result = f.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        if not isinstance(other, FFElem) or other.field is not self.field:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def __lt__(self, other):
        # fixed total order: lexicographic on coefficient vectors
        other = self._check(other)
        return self.coeffs < other.coeffs

    def __le__(self, other):
        other = self._check(other)
        return self.coeffs <= other.coeffs

    def __repr__(self):
        if self.field.k == 1:
            return f"{self.coeffs[0]}"
        return f"{list(self.coeffs)}"


def _ext_euclid_inverse(a, modulus, p: int, k: int) -> tuple:
    """Inverse of a modulo the (irreducible) modulus, by extended Euclid in F_p[x]."""
    def strip(x):
        while x and x[-1] % p == 0:
            x.pop()
        return x

    r0, r1 = strip(list(modulus)), strip(list(a))
    s0, s1 = [0], [1]
    while len(r1) > 1:
        # divide r0 by r1
        inv_lead = pow(r1[-1], p - 2, p)
        q = [0] * (len(r0) - len(r1) + 1)
        r = list(r0)
        for i in range(len(r0) - len(r1), -1, -1):
            c = (r[len(r1) - 1 + i] * inv_lead) % p
            if c:
                q[i] = c
                for j, b in enumerate(r1):
                    r[i + j] = (r[i + j] - c * b) % p
        r = strip(r)
        # s_new = s0 - q * s1
        qs = [0] * (len(q) + len(s1) - 1) if s1 else []
        for i, qc in enumerate(q):
            if qc:
                for j, sc in enumerate(s1):
                    qs[i + j] = (qs[i + j] + qc * sc) % p
        n = max(len(s0), len(qs))
        s_new = [( (s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0)) % p
                 for i in range(n)]
        r0, r1 = r1, r
        s0, s1 = s1, strip(s_new)
    if not r1:
        raise ZeroDivisionError("element not invertible")
    c_inv = pow(r1[0], p - 2, p)
    out = [(x * c_inv) % p for x in s1]
    out += [0] * (k - len(out))
    return tuple(out[:k])


class FiniteField:
    """F_{p^k} with the canonical modulus (lexicographically smallest monic irreducible)."""

    is_rational = False

    def __init__(self, p: int, k: int = 1, _token=None):
        if _token is not _FF_TOKEN:
            raise TypeError("use GF(p, k) to construct finite fields")
        self.p = p
        self.k = k
        self.order = p ** k
        self.characteristic = p
        if k > 1:
            self.modulus = _canonical_modulus(p, k)  # length k+1, monic
            # reduction table: x^(k+j) mod modulus for j = 0..k-2
            self._red = []
            rep = [(-c) % p for c in self.modulus[:k]]  # x^k = rep
            self._red.append(tuple(rep))
            for _ in range(k - 2):
                rep = self._shift_reduce(rep)
                self._red.append(tuple(rep))
        else:
            self.modulus = None

    def _shift_reduce(self, rep):
        p = self.p
        shifted = [0] + list(rep[:-1])
        top = rep[-1]
        x_k = self._red[0]
        return [(shifted[i] + top * x_k[i]) % p for i in range(self.k)]

    def _mul_vec(self, a: tuple, b: tuple) -> tuple:
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        out = [c % p for c in prod[:k]]
        for j in range(k, 2 * k - 1):
            c = prod[j] % p
            if c:
                red = self._red[j - k]
                for i in range(k):
                    out[i] = (out[i] + c * red[i]) % p
        return tuple(out)

    def __call__(self, value) -> FFElem:
        if isinstance(value, FFElem):
            if value.field is self:
                return value
            raise FieldMismatchError(f"element of {value.field!r} used in {self!r}")
        if isinstance(value, int):
            coeffs = [0] * self.k
            coeffs[0] = value % self.p
            return FFElem(self, tuple(coeffs))
        if isinstance(value, (tuple, list)):
            if len(value) != self.k:
                raise ValueError(f"coefficient vector must have length {self.k}")
            return FFElem(self, tuple(int(v) % self.p for v in value))
        raise TypeError(f"cannot coerce {value!r} into {self!r}")

    @property
    def zero(self) -> FFElem:
        return self((0,) * self.k if self.k > 1 else 0)

    @property
    def one(self) -> FFElem:
        return self(1)

    def gen(self) -> FFElem:
        """The residue class of x (only meaningful for k > 1)."""
        coeffs = [0] * self.k
        coeffs[min(1, self.k - 1)] = 1
        return FFElem(self, tuple(coeffs))

    def elements(self):
        """All p^k elements, in the fixed scalar order (lex on coefficient vectors)."""
        for idx in range(self.order):
            digits = []
            n = idx
            for _ in range(self.k):
                digits.append(n % self.p)
                n //= self.p
            yield FFElem(self, tuple(reversed(digits)))

    def frobenius(self, a: FFElem) -> FFElem:
        return a ** self.p

    def descriptor(self) -> dict:
        if self.k == 1:
            return {"kind": "prime-field", "p": self.p}
        return {"kind": "extension-field", "p": self.p, "degree": self.k,
                "modulus": list(self.modulus)}

    def __repr__(self):
        return f"GF({self.p})" if self.k == 1 else f"GF({self.p}^{self.k})"


_FF_TOKEN = object()


@lru_cache(maxsize=None)
def _gf_cached(p: int, k: int) -> FiniteField:
    if not _is_prime(p) or p == 2:
        raise UnsupportedFieldError(f"p = {p} must be an odd prime")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    return FiniteField(p, k, _token=_FF_TOKEN)


def GF(p: int, k: int = 1) -> FiniteField:
    return _gf_cached(int(p), int(k))


def field_from_descriptor(desc: dict):
    kind = desc.get("kind")
    if kind == "rationals":
        return QQ
    if kind == "prime-field":
        return GF(int(desc["p"]))
    if kind == "extension-field":
        f = GF(int(desc["p"]), int(desc["degree"]))
        if "modulus" in desc and list(desc["modulus"]) != list(f.modulus):
            raise UnsupportedFieldError(
                "non-canonical modulus; this library fixes the lexicographically "
                f"smallest irreducible {list(f.modulus)} for GF({f.p}^{f.k})")
        return f
    raise ValueError(f"unknown field descriptor {desc!r}")


# ---------------------------------------------------------------------------
# Scalar helpers
# ---------------------------------------------------------------------------

def scalar_to_json(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, FFElem):
        if x.field.k == 1:
            return x.coeffs[0]
        return str(list(x.coeffs))
    raise TypeError(f"not a scalar: {x!r}")


def scalar_from_json(field, obj):
    if field.is_rational:
        if isinstance(obj, str):
            return Fraction(obj)
        if isinstance(obj, int):
            return Fraction(obj)
        raise ValueError(f"bad rational scalar {obj!r}")
    if field.k == 1:
        return field(int(obj))
    if isinstance(obj, str):
        obj = obj.strip()
        if not (obj.startswith("[") and obj.endswith("]")):
            raise ValueError(f"bad extension-field scalar {obj!r}")
        parts = [s for s in obj[1:-1].split(",") if s.strip()]
        return field([int(s) for s in parts])
    if isinstance(obj, (list, tuple)):
        return field(list(obj))
    raise ValueError(f"bad extension-field scalar {obj!r}")


def scalar_key(x):
    """Sort key realizing the fixed total order on scalars of one field."""
    if isinstance(x, Fraction):
        return x
    return x.coeffs


# ---------------------------------------------------------------------------
# Polynomials (dense, low degree first)
# ---------------------------------------------------------------------------

class Poly:
    """Univariate polynomial over a fixed field; leading coefficient nonzero."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        cs = list(coeffs)
        while cs and _iszero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_ints(cls, field, ints):
        return cls(field, [field(c) for c in ints])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        return self.coeffs[-1]

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.field.zero
        a = list(self.coeffs) + [z] * (n - len(self.coeffs))
        b = list(other.coeffs) + [z] * (n - len(other.coeffs))
        return Poly(self.field, [x + y for x, y in zip(a, b)])

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            if self.is_zero() or other.is_zero():
                return Poly(self.field, [])
            z = self.field.zero
            out = [z] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if _iszero(a):
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return Poly(self.field, out)
        return Poly(self.field, [c * other for c in self.coeffs])

    def scale(self, s):
        return Poly(self.field, [c * s for c in self.coeffs])

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.degree < other.degree:
            return Poly(self.field, []), self
        z = self.field.zero
        rem = list(self.coeffs)
        dq = self.degree - other.degree
        quo = [z] * (dq + 1)
        inv_lead = _inv(other.leading())
        for i in range(dq, -1, -1):
            c = rem[other.degree + i] * inv_lead
            quo[i] = c
            if not _iszero(c):
                for j, b in enumerate(other.coeffs):
                    rem[i + j] = rem[i + j] - c * b
        return Poly(self.field, quo), Poly(self.field, rem[:other.degree])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(_inv(self.leading()))

    def derivative(self) -> "Poly":
        return Poly(self.field, [c * self.field(i) for i, c in
                                 enumerate(self.coeffs) if i >= 1])

    def evaluate(self, x):
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def pth_root_substitution(self) -> "Poly":
        """For f with f' = 0 over F_{p^k}: the g with g(x^p) = f (coefficient p-th roots)."""
        f = self.field
        p = f.p
        root_exp = p ** (f.k - 1)  # a^(p^(k-1)) is the p-th root in F_{p^k}
        out = []
        for i in range(0, len(self.coeffs), p):
            out.append(self.coeffs[i] ** root_exp)
        return Poly(f, out)

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        return "Poly[" + ", ".join(repr(c) for c in self.coeffs) + "]"


def _iszero(c) -> bool:
    if isinstance(c, Fraction):
        return c == 0
    return c.is_zero()


def _inv(c):
    if isinstance(c, Fraction):
        if c == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / c
    return c.inverse()


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    if a.is_zero():
        return a
    return a.monic()


def poly_pow_mod(base: Poly, n: int, mod: Poly) -> Poly:
    result = Poly(base.field, [base.field.one])
    base = base % mod
    while n:
        if n & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        n >>= 1
    return result


def squarefree(f: Poly) -> bool:
    """True iff gcd(f, f') is constant."""
    if f.is_zero():
        raise DegenerateInputError("squarefree test on the zero polynomial")
    if f.degree == 0:
        return True
    d = f.derivative()
    if d.is_zero():
        return False  # f is a p-th power (char p); never squarefree for deg >= 1
    return poly_gcd(f, d).degree == 0


# --- factorization over finite fields --------------------------------------

def _squarefree_decomposition(f: Poly):
    """Monic f over F_{p^k} -> list of (monic squarefree g_i, multiplicity e_i)."""
    field = f.field
    p = field.p
    out = []
    n = 1
    while True:
        d = f.derivative()
        if not d.is_zero():
            g = poly_gcd(f, d)
            h = f // g
            i = 1
            while h.degree > 0:
                gg = poly_gcd(g, h)
                hh = h // gg
                if hh.degree > 0:
                    out.append((hh.monic(), i * n))
                g = g // gg
                h = gg
                i += 1
            if g.degree == 0:
                return out
            f = g  # remaining part is a p-th power
        f = f.pth_root_substitution()
        n *= p


def _distinct_degree(f: Poly):
    """Monic squarefree f -> list of (product-of-irreducibles-of-degree-d, d)."""
    field = f.field
    q = field.order
    out = []
    x = Poly(field, [field.zero, field.one])
    g = x
    d = 1
    while 2 * d <= f.degree:
        g = poly_pow_mod(g, q, f)
        h = poly_gcd(f, g - x)
        if h.degree > 0:
            out.append((h, d))
            f = f // h
            g = g % f
        d += 1
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def _poly_seed(f: Poly, tag: str) -> int:
    payload = repr((tag, f.field.p, f.field.k, tuple(c.coeffs for c in f.coeffs)))
    return int.from_bytes(hashlib.sha256(payload.encode()).digest()[:8], "big")


def _equal_degree(f: Poly, d: int, rng: random.Random):
    """Cantor-Zassenhaus split of a squarefree product of degree-d irreducibles (q odd)."""
    if f.degree == d:
        return [f]
    field = f.field
    q = field.order
    exp = (q ** d - 1) // 2
    one = Poly(field, [field.one])
    while True:
        coeffs = []
        for _ in range(f.degree):
            if field.k == 1:
                coeffs.append(field(rng.randrange(field.p)))
            else:
                coeffs.append(field(tuple(rng.randrange(field.p)
                                          for _ in range(field.k))))
        r = Poly(field, coeffs)
        if r.degree < 1:
            continue
        h = poly_pow_mod(r, exp, f)
        g = poly_gcd(f, h - one)
        if 0 < g.degree < f.degree:
            return _equal_degree(g, d, rng) + _equal_degree(f // g, d, rng)


def factor(f: Poly):
    """Full factorization over F_{p^k}: sorted list of (monic irreducible, multiplicity)."""
    if f.is_zero():
        raise DegenerateInputError("cannot factor the zero polynomial")
    if f.field.is_rational:
        raise UnsupportedFieldError(
            "factorization is available over finite fields only; over Q use "
            "rational_roots / reduce mod p")
    if f.degree == 0:
        return []
    rng = random.Random(_poly_seed(f, "edf"))
    out = []
    for g, mult in _squarefree_decomposition(f.monic()):
        for h, d in _distinct_degree(g):
            for irr in _equal_degree(h, d, rng):
                out.append((irr.monic(), mult))
    out.sort(key=lambda fm: (fm[0].degree, [c.coeffs for c in fm[0].coeffs]))
    return out


def roots(f: Poly):
    """Roots of f in its own (finite) coefficient field, sorted, without multiplicity."""
    rs = [(-g.coeffs[0]) for g, _ in factor(f) if g.degree == 1]
    rs.sort(key=scalar_key)
    return rs


def is_irreducible(f: Poly) -> bool:
    if f.degree < 1:
        return False
    fs = factor(f)
    return len(fs) == 1 and fs[0][1] == 1


def rational_roots(f: Poly):
    """All rational roots of a nonzero f over Q, with multiplicity, sorted."""
    if not f.field.is_rational:
        raise UnsupportedFieldError("rational_roots expects a polynomial over Q")
    if f.is_zero():
        raise DegenerateInputError("zero polynomial")
    # clear denominators to an integer polynomial
    from math import gcd, lcm
    den = lcm(*[c.denominator for c in f.coeffs]) if f.coeffs else 1
    ints = [int(c * den) for c in f.coeffs]
    # strip factors of x
    mult0 = 0
    while ints and ints[0] == 0:
        ints.pop(0)
        mult0 += 1
    out = [(Fraction(0), mult0)] if mult0 else []
    if len(ints) <= 1:
        return sorted(out)
    a0, an = abs(ints[0]), abs(ints[-1])

    def divisors(n):
        ds = set()
        d = 1
        while d * d <= n:
            if n % d == 0:
                ds.add(d)
                ds.add(n // d)
            d += 1
        return ds

    g = Poly(QQ, [Fraction(c) for c in ints])
    candidates = sorted({Fraction(s * num, den) for num in divisors(a0)
                         for den in divisors(an) for s in (1, -1)})
    for cand in candidates:
        m = 0
        lin = Poly(QQ, [-cand, Fraction(1)])
        while g.evaluate(cand) == 0:
            g = g // lin
            m += 1
        if m:
            out.append((cand, m))
    return sorted(out)


# --- quadratic residues -----------------------------------------------------

def is_square(a: FFElem) -> bool:
    """Euler criterion in F_{p^k}: a^((q-1)/2) == 1."""
    if not isinstance(a, FFElem):
        raise UnsupportedFieldError("is_square is defined over finite fields")
    if a.is_zero():
        raise DegenerateInputError("is_square(0) is undefined")
    return a ** ((a.field.order - 1) // 2) == a.field.one


def is_square_in_subfield(a: FFElem, m: int) -> bool:
    """Squareness of a in the subfield F_{p^m} of a's field (requires a in that subfield)."""
    if a.is_zero():
        raise DegenerateInputError("is_square(0) is undefined")
    f = a.field
    if f.k % m != 0:
        raise ValueError(f"F_{f.p}^{m} is not a subfield of {f!r}")
    t = a ** ((f.p ** m - 1) // 2)
    if t == f.one:
        return True
    if t == -f.one:
        return False
    raise ValueError("element does not lie in the requested subfield")


def in_subfield(a: FFElem, m: int) -> bool:
    """True iff a lies in F_{p^m} inside its field (m must divide the degree)."""
    return a ** (a.field.p ** m) == a


# --- canonical modulus and embeddings ----------------------------------------

def _prime_poly_irreducible(p: int, coeffs: tuple) -> bool:
    """Rabin irreducibility for a monic poly over F_p given as an int tuple (low first)."""
    field = GF(p)
    f = Poly.from_ints(field, coeffs)
    n = f.degree
    x = Poly.from_ints(field, [0, 1])
    # x^(p^n) == x mod f
    g = poly_pow_mod(x, p ** n, f)
    if g != x % f:
        return False
    for ell in {d for d in range(2, n + 1) if _is_prime(d) and n % d == 0}:
        h = poly_pow_mod(x, p ** (n // ell), f)
        if poly_gcd(f, h - x).degree != 0:
            return False
    return True


@lru_cache(maxsize=None)
def _canonical_modulus(p: int, k: int) -> tuple:
    """Lexicographically smallest monic irreducible of degree k over F_p.

    Non-leading coefficients are enumerated as the base-p digits of n (most
    significant digit = coefficient of x^(k-1)), n ascending.
    """
    for n in range(p ** k):
        digits = []
        m = n
        for _ in range(k):
            digits.append(m % p)
            m //= p
        coeffs = tuple(digits) + (1,)  # low degree first
        if _prime_poly_irreducible(p, coeffs):
            return coeffs
    raise RuntimeError("unreachable: irreducibles of every degree exist")


@lru_cache(maxsize=None)
def _embedding_image(src_key, dst_key) -> FFElem:
    """Canonical image of the generator of src in dst (src degree divides dst degree)."""
    p, ks = src_key
    _, kd = dst_key
    src = GF(p, ks)
    dst = GF(p, kd)
    mod = Poly(dst, [dst(c) for c in src.modulus])
    cands = roots(mod)
    if not cands:
        raise ValueError("no embedding: source degree does not divide target degree")
    return cands[0]  # smallest root in the fixed scalar order


def embed(a, dst):
    """Embed a scalar into the field dst (identity on Q; canonical on finite fields)."""
    if dst.is_rational:
        if isinstance(a, Fraction):
            return a
        raise FieldMismatchError("cannot embed a finite-field element into Q")
    if isinstance(a, Fraction):
        raise FieldMismatchError("cannot embed a rational into a finite field")
    src = a.field
    if src is dst:
        return a
    if src.p != dst.p or dst.k % src.k != 0:
        raise FieldMismatchError(f"no embedding {src!r} -> {dst!r}")
    if src.k == 1:
        return dst(a.coeffs[0])
    img = _embedding_image((src.p, src.k), (dst.p, dst.k))
    acc = dst.zero
    for c in reversed(a.coeffs):
        acc = acc * img + dst(c)
    return acc


def embed_poly(f: Poly, dst) -> Poly:
    return Poly(dst, [embed(c, dst) for c in f.coeffs])
