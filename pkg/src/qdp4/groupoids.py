"""Finite groupoids given by explicit tables, functors between them, and
construction/verification of composition-compatible left inverses on hom-sets."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass


class InvalidGroupError(ValueError):
    pass


class InvalidSplittingError(ValueError):
    pass


class IncompatibleFamilyError(ValueError):
    """The splitting family violates the conjugation-compatibility squares."""


@dataclass(frozen=True)
class FiniteGroupoid:
    objects: tuple
    morphisms: dict          # name -> (src, tgt)
    compose_table: dict      # (g, f) -> g o f, for f: X->Y, g: Y->Z
    identities: dict         # object -> identity morphism name

    def src(self, f):
        return self.morphisms[f][0]

    def tgt(self, f):
        return self.morphisms[f][1]

    def compose(self, g, f):
        """g o f (f first)."""
        return self.compose_table[(g, f)]

    def hom(self, x, y):
        return sorted(n for n, (s, t) in self.morphisms.items() if s == x and t == y)

    def aut(self, x):
        return self.hom(x, x)

    def inverse(self, f):
        x, y = self.morphisms[f]
        for g in self.hom(y, x):
            if (self.compose(g, f) == self.identities[x]
                    and self.compose(f, g) == self.identities[y]):
                return g
        raise InvalidGroupError(f"morphism {f} has no inverse")

    def iso_classes(self):
        """Partition of objects by isomorphism, each class sorted."""
        remaining = set(self.objects)
        classes = []
        for x in self.objects:
            if x not in remaining:
                continue
            cls = [y for y in self.objects if self.hom(x, y)]
            classes.append(tuple(sorted(cls, key=str)))
            remaining -= set(cls)
        return classes

    def to_json(self):
        return {"objects": list(self.objects),
                "morphisms": [{"name": n, "src": s, "tgt": t}
                              for n, (s, t) in sorted(self.morphisms.items())],
                "compose": [[g, f, gf] for (g, f), gf in sorted(self.compose_table.items())],
                "identities": dict(sorted(self.identities.items()))}

    @classmethod
    def from_json(cls, obj):
        morphisms = {m["name"]: (m["src"], m["tgt"]) for m in obj["morphisms"]}
        compose = {(g, f): gf for g, f, gf in obj["compose"]}
        return cls(tuple(obj["objects"]), morphisms, compose, dict(obj["identities"]))


def check_groupoid(G: FiniteGroupoid):
    """None if G satisfies the groupoid axioms, else a witness message."""
    for x in G.objects:
        e = G.identities.get(x)
        if e is None or G.morphisms.get(e) != (x, x):
            return f"missing or mistyped identity at object {x!r}"
    for n, (s, t) in G.morphisms.items():
        if s not in G.objects or t not in G.objects:
            return f"morphism {n!r} has unknown endpoints"
    names = list(G.morphisms)
    for g in names:
        for f in names:
            composable = G.src(g) == G.tgt(f)
            present = (g, f) in G.compose_table
            if composable != present:
                return f"composition table wrong on pair ({g!r}, {f!r})"
            if present:
                gf = G.compose_table[(g, f)]
                if G.morphisms.get(gf) != (G.src(f), G.tgt(g)):
                    return f"composite {g!r} o {f!r} = {gf!r} is mistyped"
    for f in names:
        x, y = G.morphisms[f]
        if G.compose(f, G.identities[x]) != f or G.compose(G.identities[y], f) != f:
            return f"identity law fails at {f!r}"
    for h in names:
        for g in names:
            if G.src(h) != G.tgt(g):
                continue
            for f in names:
                if G.src(g) != G.tgt(f):
                    continue
                if G.compose(G.compose(h, g), f) != G.compose(h, G.compose(g, f)):
                    return f"associativity fails on ({h!r}, {g!r}, {f!r})"
    for f in names:
        x, y = G.morphisms[f]
        if not any(G.compose(g, f) == G.identities[x] and G.compose(f, g) == G.identities[y]
                   for g in G.hom(y, x)):
            return f"morphism {f!r} is not invertible"
    return None


def validate(G: FiniteGroupoid) -> bool:
    return check_groupoid(G) is None


@dataclass(frozen=True)
class GroupoidFunctor:
    source: FiniteGroupoid
    target: FiniteGroupoid
    object_map: dict
    morphism_map: dict

    def ob(self, x):
        return self.object_map[x]

    def mor(self, f):
        return self.morphism_map[f]


def check_functor(phi: GroupoidFunctor):
    C, D = phi.source, phi.target
    for x in C.objects:
        if phi.object_map.get(x) not in D.objects:
            return f"object {x!r} has no image"
        if phi.mor(C.identities[x]) != D.identities[phi.ob(x)]:
            return f"identity at {x!r} not preserved"
    for f, (s, t) in C.morphisms.items():
        img = phi.morphism_map.get(f)
        if img is None or D.morphisms.get(img) != (phi.ob(s), phi.ob(t)):
            return f"morphism {f!r} mistyped under the functor"
    for g in C.morphisms:
        for f in C.morphisms:
            if C.src(g) != C.tgt(f):
                continue
            if phi.mor(C.compose(g, f)) != D.compose(phi.mor(g), phi.mor(f)):
                return f"composition not preserved on ({g!r}, {f!r})"
    return None


def validate_functor(phi: GroupoidFunctor) -> bool:
    return check_functor(phi) is None


def injective_on_iso_classes(phi: GroupoidFunctor) -> bool:
    C, D = phi.source, phi.target
    reps = [cls[0] for cls in C.iso_classes()]
    for x, y in itertools.combinations(reps, 2):
        if D.hom(phi.ob(x), phi.ob(y)):
            return False
    return True


# ---------------------------------------------------------------------------
# Splittings and the hom-set left inverses
# ---------------------------------------------------------------------------

def _check_splitting(phi: GroupoidFunctor, x0, psi: dict):
    """psi: Aut_D(phi(x0)) -> Aut_C(x0) must be a left-inverse homomorphism."""
    C, D = phi.source, phi.target
    aut_d = D.aut(phi.ob(x0))
    aut_c = C.aut(x0)
    if sorted(psi) != aut_d:
        return f"splitting at {x0!r} is not defined on the full automorphism group"
    if any(psi[u] not in aut_c for u in aut_d):
        return f"splitting at {x0!r} does not land in Aut({x0!r})"
    for u in aut_d:
        for v in aut_d:
            if psi[D.compose(v, u)] != C.compose(psi[v], psi[u]):
                return f"splitting at {x0!r} is not a homomorphism on ({v!r}, {u!r})"
    for g in aut_c:
        if psi[phi.mor(g)] != g:
            return f"splitting at {x0!r} is not a left inverse on {g!r}"
    return None


def build_psi(phi: GroupoidFunctor, psi_by_base: dict, base_objects: dict,
              isos: dict):
    """Total family Psi[(X, Y)][u] of hom-set left inverses.

    psi_by_base[x0]: verified splitting at the base object x0;
    base_objects[X]: the chosen base object of X's isomorphism class;
    isos[X]: a chosen isomorphism base_objects[X] -> X (identity at the base).

    Psi_{X,Y}(u) = y o psi(phi(y)^{-1} o u o phi(x)) o x^{-1}.
    """
    C, D = phi.source, phi.target
    if not injective_on_iso_classes(phi):
        raise InvalidSplittingError("functor is not injective on isomorphism classes")
    for x0, psi in psi_by_base.items():
        witness = _check_splitting(phi, x0, psi)
        if witness:
            raise InvalidSplittingError(witness)
    for x in C.objects:
        x0 = base_objects[x]
        if x0 not in psi_by_base:
            raise InvalidSplittingError(f"no splitting supplied for base object {x0!r}")
        if C.morphisms[isos[x]] != (x0, x):
            raise InvalidSplittingError(f"iso for {x!r} is not a morphism {x0!r} -> {x!r}")
    out = {}
    for x in C.objects:
        for y in C.objects:
            if base_objects[x] != base_objects[y]:
                continue
            x0 = base_objects[x]
            psi = psi_by_base[x0]
            ix, iy = isos[x], isos[y]
            phix, phiy = phi.mor(ix), phi.mor(iy)
            phiy_inv = D.inverse(phiy)
            ix_inv = C.inverse(ix)
            table = {}
            for u in D.hom(phi.ob(x), phi.ob(y)):
                inner = D.compose(phiy_inv, D.compose(u, phix))
                table[u] = C.compose(iy, C.compose(psi[inner], ix_inv))
            out[(x, y)] = table
    return out


def verify_heavy_separability(phi: GroupoidFunctor, Psi: dict):
    """(True, None) iff retraction (s1) and multiplicativity (s3) hold
    exhaustively; otherwise (False, witness)."""
    C, D = phi.source, phi.target
    for f, (x, y) in C.morphisms.items():
        table = Psi.get((x, y), {})
        if table.get(phi.mor(f)) != f:
            return False, f"(s1) fails on morphism {f!r}"
    for x in C.objects:
        for y in C.objects:
            if (x, y) not in Psi:
                continue
            for z in C.objects:
                if (y, z) not in Psi:
                    continue
                for u in D.hom(phi.ob(x), phi.ob(y)):
                    for v in D.hom(phi.ob(y), phi.ob(z)):
                        lhs = Psi[(x, z)][D.compose(v, u)]
                        rhs = C.compose(Psi[(y, z)][v], Psi[(x, y)][u])
                        if lhs != rhs:
                            return False, f"(s3) fails on ({v!r}, {u!r}) at ({x!r},{y!r},{z!r})"
    return True, None


def verify_naturality(phi: GroupoidFunctor, Psi: dict):
    """The naturality squares (the condition implied by (s1) + (s3))."""
    C, D = phi.source, phi.target
    for a, (xp, x) in C.morphisms.items():
        for b, (y, yp) in C.morphisms.items():
            if (x, y) not in Psi:
                continue
            for u in D.hom(phi.ob(x), phi.ob(y)):
                lhs = Psi[(xp, yp)][D.compose(phi.mor(b), D.compose(u, phi.mor(a)))]
                rhs = C.compose(b, C.compose(Psi[(x, y)][u], a))
                if lhs != rhs:
                    return False, f"(s2) fails on ({a!r}, {b!r}, {u!r})"
    return True, None


def family_compatible(phi: GroupoidFunctor, psi_all: dict):
    """Check the conjugation-compatibility squares for a full splitting family
    psi_all[X] defined at every object; returns witness or None."""
    C, D = phi.source, phi.target
    for x in C.objects:
        witness = _check_splitting(phi, x, psi_all[x])
        if witness:
            return witness
    for a, (x, xp) in C.morphisms.items():
        pa = phi.mor(a)
        pa_inv = D.inverse(pa)
        a_inv = C.inverse(a)
        for u in D.aut(phi.ob(x)):
            lhs = psi_all[xp][D.compose(pa, D.compose(u, pa_inv))]
            rhs = C.compose(a, C.compose(psi_all[x][u], a_inv))
            if lhs != rhs:
                return f"compatibility square fails on ({a!r}, {u!r})"
    return None


def independence_check(phi: GroupoidFunctor, psi_all: dict,
                       max_choices: int = 20000, rng=None) -> bool:
    """Under a compatible family, the Psi built from any admissible choice of
    base objects and isomorphisms coincide.

    Enumerates all choices when their number is at most max_choices, otherwise
    samples max_choices of them (seeded rng for determinism).
    """
    C = phi.source
    witness = family_compatible(phi, psi_all)
    if witness:
        raise IncompatibleFamilyError(witness)
    classes = C.iso_classes()

    def choices_for_class(cls):
        for x0 in cls:
            iso_lists = [C.hom(x0, x) for x in cls]
            for combo in itertools.product(*iso_lists):
                yield x0, dict(zip(cls, combo))

    per_class = [list(choices_for_class(cls)) for cls in classes]
    total = 1
    for ch in per_class:
        total *= len(ch)
    if rng is None:
        rng = random.Random(0)
    if total <= max_choices:
        combos = itertools.product(*per_class)
    else:
        combos = (tuple(rng.choice(ch) for ch in per_class)
                  for _ in range(max_choices))
    reference = None
    for combo in combos:
        base_objects = {}
        isos = {}
        for cls, (x0, iso_map) in zip(classes, combo):
            for x in cls:
                base_objects[x] = x0
                isos[x] = iso_map[x]
        psi_by_base = {base_objects[cls[0]]: psi_all[base_objects[cls[0]]]
                       for cls in classes}
        built = build_psi(phi, psi_by_base, base_objects, isos)
        if reference is None:
            reference = built
        elif built != reference:
            return False
    return True


def find_splitting(phi: GroupoidFunctor, x0, max_group_order: int = 256):
    """Brute-force left-inverse homomorphism Aut_D(phi(x0)) -> Aut_C(x0), or None."""
    C, D = phi.source, phi.target
    aut_d = D.aut(phi.ob(x0))
    aut_c = C.aut(x0)
    if len(aut_d) > max_group_order:
        raise InvalidGroupError("automorphism group exceeds the search bound")
    e_d = D.identities[phi.ob(x0)]
    e_c = C.identities[x0]
    image = {phi.mor(g) for g in aut_c}
    if len(image) != len(aut_c):
        return None  # phi not injective on Aut, no left inverse can exist
    # greedy generating set for Aut_D
    gens = []
    span = {e_d}
    for g in aut_d:
        if g in span:
            continue
        gens.append(g)
        frontier = list(span)
        span = set(span)
        while frontier:
            a = frontier.pop()
            for h in gens:
                for prod in (D.compose(a, h), D.compose(h, a)):
                    if prod not in span:
                        span.add(prod)
                        frontier.append(prod)
        if len(span) == len(aut_d):
            break
    for images in itertools.product(aut_c, repeat=len(gens)):
        mapping = {e_d: e_c}
        frontier = [e_d]
        ok = True
        while frontier and ok:
            a = frontier.pop()
            for g, h in zip(gens, images):
                prod = D.compose(g, a)
                val = C.compose(h, mapping[a])
                if prod in mapping:
                    if mapping[prod] != val:
                        ok = False
                        break
                else:
                    mapping[prod] = val
                    frontier.append(prod)
        if not ok or len(mapping) != len(aut_d):
            continue
        if any(mapping[D.compose(v, u)] != C.compose(mapping[v], mapping[u])
               for v in aut_d for u in aut_d):
            continue
        if all(mapping[phi.mor(g)] == g for g in aut_c):
            return mapping
    return None


def build_left_inverse_functor(phi: GroupoidFunctor, Psi: dict):
    """A functor on the image with Psi_functor o phi == id on a chosen-object
    subcategory; realizes the left-inverse-functor characterization."""
    C, D = phi.source, phi.target
    chosen = {}
    for x in C.objects:
        d = phi.ob(x)
        chosen.setdefault(d, x)
    object_map = dict(chosen)
    morphism_map = {}
    for (x, y), table in Psi.items():
        if chosen[phi.ob(x)] != x or chosen[phi.ob(y)] != y:
            continue
        for u, f in table.items():
            morphism_map[u] = f
    return object_map, morphism_map


# ---------------------------------------------------------------------------
# Constructions (used by tests and the CLI selftest)
# ---------------------------------------------------------------------------

def group_groupoid(tag: str, objects, elements, mul, inverse=None):
    """Connected groupoid with Hom(X, Y) = {(X, Y, g)}: composition
    (Y,Z,h) o (X,Y,g) = (X,Z,h*g).  Morphism names are f"{tag}:{X}>{Y}:{g}"."""
    objects = tuple(objects)
    name = {}
    morphisms = {}
    for x in objects:
        for y in objects:
            for g in elements:
                n = f"{tag}:{x}>{y}:{g}"
                name[(x, y, g)] = n
                morphisms[n] = (x, y)
    compose = {}
    for x in objects:
        for y in objects:
            for z in objects:
                for g in elements:
                    for h in elements:
                        compose[(name[(y, z, h)], name[(x, y, g)])] = name[(x, z, mul(h, g))]
    ident = next(e for e in elements if all(mul(e, g) == g and mul(g, e) == g
                                            for g in elements))
    identities = {x: name[(x, x, ident)] for x in objects}
    return FiniteGroupoid(objects, morphisms, compose, identities), name


def disjoint_union(g1: FiniteGroupoid, g2: FiniteGroupoid) -> FiniteGroupoid:
    objects = g1.objects + g2.objects
    if set(g1.objects) & set(g2.objects):
        raise ValueError("object names collide")
    morphisms = {**g1.morphisms, **g2.morphisms}
    compose = {**g1.compose_table, **g2.compose_table}
    identities = {**g1.identities, **g2.identities}
    return FiniteGroupoid(objects, morphisms, compose, identities)
