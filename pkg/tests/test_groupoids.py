import itertools
import random

import pytest

from qdp4.groupoids import (FiniteGroupoid, GroupoidFunctor,
                            IncompatibleFamilyError, InvalidSplittingError,
                            build_left_inverse_functor, build_psi,
                            check_functor, check_groupoid, disjoint_union,
                            family_compatible, find_splitting, group_groupoid,
                            independence_check, injective_on_iso_classes,
                            validate, validate_functor,
                            verify_heavy_separability, verify_naturality)
from qdp4.hyperoct import all_signed_perms, retract
from qdp4.sampling import random_split_functor


def cyclic(n):
    return tuple(range(n)), (lambda a, b: (a + b) % n)


def c2_two_object_setup():
    """C: C2 on two isomorphic objects; D: C2 x C2 on one object; phi = g -> (g, 0)."""
    c2, mul2 = cyclic(2)
    C, cname = group_groupoid("C", ["X", "Y"], c2, mul2)
    elems4 = tuple(itertools.product(range(2), range(2)))
    mul4 = (lambda a, b: ((a[0] + b[0]) % 2, (a[1] + b[1]) % 2))
    D, dname = group_groupoid("D", ["Z"], elems4, mul4)
    mor_map = {n: dname[("Z", "Z", (g, 0))] for (x, y, g), n in cname.items()}
    phi = GroupoidFunctor(C, D, {"X": "Z", "Y": "Z"}, mor_map)
    psi_all = {x: {dname[("Z", "Z", (g, k))]: cname[(x, x, g)]
                   for g in range(2) for k in range(2)} for x in ("X", "Y")}
    return phi, psi_all, cname, dname


def test_validate_group_table_groupoid():
    c4, mul4 = cyclic(4)
    G, _ = group_groupoid("G", ["*"], c4, mul4)
    assert validate(G)
    assert check_groupoid(G) is None


def test_validate_reports_witnesses():
    c2, mul2 = cyclic(2)
    G, name = group_groupoid("G", ["*"], c2, mul2)
    # break invertibility by retyping the composition table
    bad_compose = dict(G.compose_table)
    g1 = name[("*", "*", 1)]
    g0 = name[("*", "*", 0)]
    bad_compose[(g1, g1)] = g1  # now g1 has no inverse and associativity breaks
    bad = FiniteGroupoid(G.objects, G.morphisms, bad_compose, G.identities)
    witness = check_groupoid(bad)
    assert witness is not None


def test_validate_functor_witness():
    phi, _, cname, dname = c2_two_object_setup()
    broken = dict(phi.morphism_map)
    broken[cname[("X", "X", 1)]] = dname[("Z", "Z", (0, 0))]
    bad = GroupoidFunctor(phi.source, phi.target, phi.object_map, broken)
    assert check_functor(bad) is not None
    assert validate_functor(phi)


def test_injective_on_iso_classes():
    phi, _, _, _ = c2_two_object_setup()
    assert injective_on_iso_classes(phi)  # X ~ Y, single class
    # collapsing two distinct classes is caught
    c2, mul2 = cyclic(2)
    C1, n1 = group_groupoid("P", ["P0"], c2, mul2)
    C2_, n2 = group_groupoid("Q", ["Q0"], c2, mul2)
    C = disjoint_union(C1, C2_)
    D, dn = group_groupoid("D", ["Z"], c2, mul2)
    phi2 = GroupoidFunctor(C, D, {"P0": "Z", "Q0": "Z"},
                           {n1[("P0", "P0", g)]: dn[("Z", "Z", g)] for g in range(2)} |
                           {n2[("Q0", "Q0", g)]: dn[("Z", "Z", g)] for g in range(2)})
    assert validate_functor(phi2)
    assert not injective_on_iso_classes(phi2)


def test_identity_functor_psi_is_identity():
    c3, mul3 = cyclic(3)
    G, name = group_groupoid("G", ["*"], c3, mul3)
    phi = GroupoidFunctor(G, G, {"*": "*"}, {n: n for n in G.morphisms})
    psi = {n: n for n in G.aut("*")}
    Psi = build_psi(phi, {"*": psi}, {"*": "*"}, {"*": G.identities["*"]})
    assert all(Psi[("*", "*")][u] == u for u in G.aut("*"))
    ok, _ = verify_heavy_separability(phi, Psi)
    assert ok
    assert independence_check(phi, {"*": psi})


def test_two_objects_onto_one_full_psi():
    phi, psi_all, cname, dname = c2_two_object_setup()
    C = phi.source
    base = {"X": "X", "Y": "X"}
    isos = {"X": C.identities["X"], "Y": cname[("X", "Y", 0)]}
    Psi = build_psi(phi, {"X": psi_all["X"]}, base, isos)
    # defined on all four hom-sets
    assert set(Psi) == {("X", "X"), ("X", "Y"), ("Y", "X"), ("Y", "Y")}
    ok, witness = verify_heavy_separability(phi, Psi)
    assert ok, witness
    ok2, witness2 = verify_naturality(phi, Psi)
    assert ok2, witness2  # (s2) emerges from (s1) + (s3)


def test_invalid_splitting_rejected():
    phi, psi_all, cname, dname = c2_two_object_setup()
    C = phi.source
    bad_psi = dict(psi_all["X"])
    # destroy the left-inverse property
    bad_psi[dname[("Z", "Z", (1, 0))]] = cname[("X", "X", 0)]
    with pytest.raises(InvalidSplittingError):
        build_psi(phi, {"X": bad_psi}, {"X": "X", "Y": "X"},
                  {"X": C.identities["X"], "Y": cname[("X", "Y", 0)]})


def test_perturbed_psi_detected():
    phi, psi_all, cname, dname = c2_two_object_setup()
    C = phi.source
    base = {"X": "X", "Y": "X"}
    isos = {"X": C.identities["X"], "Y": cname[("X", "Y", 0)]}
    Psi = build_psi(phi, {"X": psi_all["X"]}, base, isos)
    hom_xy = Psi[("X", "Y")]
    u0 = next(iter(hom_xy))
    others = [f for f in C.hom("X", "Y") if f != hom_xy[u0]]
    Psi[("X", "Y")] = dict(hom_xy)
    Psi[("X", "Y")][u0] = others[0]
    ok, witness = verify_heavy_separability(phi, Psi)
    assert not ok and witness is not None


def test_no_splitting_c2_into_c4():
    # Aut Z/4 has no retraction onto its order-2 subgroup
    c2, mul2 = cyclic(2)
    c4, mul4 = cyclic(4)
    C, cn = group_groupoid("A", ["P"], c2, mul2)
    D, dn = group_groupoid("B", ["Q"], c4, mul4)
    inc = GroupoidFunctor(C, D, {"P": "Q"},
                          {cn[("P", "P", g)]: dn[("Q", "Q", 2 * g)] for g in range(2)})
    assert validate_functor(inc)
    assert find_splitting(inc, "P") is None


def test_find_splitting_succeeds_on_direct_product():
    phi, psi_all, _, _ = c2_two_object_setup()
    found = find_splitting(phi, "X")
    assert found is not None
    assert found == psi_all["X"]  # unique here: C2 x C2 -> C2 left inverses of g->(g,0)


def test_independence_check_and_incompatible_family():
    phi, psi_all, cname, dname = c2_two_object_setup()
    assert family_compatible(phi, psi_all) is None
    assert independence_check(phi, psi_all)
    # families must be conjugation-compatible; breaking psi_Y's homomorphism
    # property is reported as a precondition failure
    bad = {x: dict(m) for x, m in psi_all.items()}
    bad["Y"][dname[("Z", "Z", (1, 1))]] = cname[("Y", "Y", 0)]
    with pytest.raises(IncompatibleFamilyError):
        independence_check(phi, bad)


def test_signed_permutation_inclusion_splits_via_central_flip():
    # one-object groupoids with Aut = B_3 > D_3: psi = the central-flip retract
    n = 3
    import itertools as it

    def compose3(a, b):
        pa, sa = a
        pb, sb = b
        perm = tuple(pa[pb[i]] for i in range(n))
        inv_pa = [0] * n
        for i, im in enumerate(pa):
            inv_pa[im] = i
        signs = tuple(sa[j] * sb[inv_pa[j]] for j in range(n))
        return (perm, signs)

    b3 = tuple((perm, signs) for perm in it.permutations(range(n))
               for signs in it.product((1, -1), repeat=n))
    d3 = tuple(a for a in b3 if a[1].count(-1) % 2 == 0)
    C, cn = group_groupoid("D3", ["*"], d3, compose3)
    D, dn = group_groupoid("B3", ["*D"], b3, compose3)
    phi = GroupoidFunctor(C, D, {"*": "*D"},
                          {cn[("*", "*", g)]: dn[("*D", "*D", g)] for g in d3})
    assert validate_functor(phi)

    def retract3(a):
        perm, signs = a
        if signs.count(-1) % 2 == 0:
            return a
        return (perm, tuple(-s for s in signs))

    psi = {dn[("*D", "*D", g)]: cn[("*", "*", retract3(g))] for g in b3}
    Psi = build_psi(phi, {"*": psi}, {"*": "*"}, {"*": C.identities["*"]})
    ok, witness = verify_heavy_separability(phi, Psi)
    assert ok, witness
    # Psi is exactly the retract on the single hom-set
    assert all(Psi[("*", "*")][dn[("*D", "*D", g)]] == cn[("*", "*", retract3(g))]
               for g in b3)


def test_b5_retraction_satisfies_s1_on_all_even_elements():
    # hom-level (s1) for the full-size case: the retract restricted to the
    # image of the inclusion D5 -> B5 is the identity (the (s3) law over all
    # 3840^2 pairs is the splitting acceptance suite)
    for a in all_signed_perms():
        if a.is_even():
            assert retract(a) == a


def test_round_trip_on_random_instances():
    rng = random.Random(12)
    for i in range(25):
        phi, psi_all = random_split_functor(rng, idx=i)
        C = phi.source
        classes = C.iso_classes()
        base_objects, isos, psi_by_base = {}, {}, {}
        for cls in classes:
            x0 = cls[0]
            psi_by_base[x0] = psi_all[x0]
            for x in cls:
                base_objects[x] = x0
                isos[x] = C.hom(x0, x)[0]
        Psi = build_psi(phi, psi_by_base, base_objects, isos)
        ok, witness = verify_heavy_separability(phi, Psi)
        assert ok, witness
        ok2, witness2 = verify_naturality(phi, Psi)
        assert ok2, witness2


def test_left_inverse_functor():
    phi, psi_all, cname, dname = c2_two_object_setup()
    C, D = phi.source, phi.target
    base = {"X": "X", "Y": "X"}
    isos = {"X": C.identities["X"], "Y": cname[("X", "Y", 0)]}
    Psi = build_psi(phi, {"X": psi_all["X"]}, base, isos)
    obj_map, mor_map = build_left_inverse_functor(phi, Psi)
    assert obj_map == {"Z": "X"}
    # Psi_functor o phi == id on the chosen-object subcategory
    for g in C.aut("X"):
        assert mor_map[phi.mor(g)] == g


def test_groupoid_json_round_trip():
    c3, mul3 = cyclic(3)
    G, _ = group_groupoid("G", ["a", "b"], c3, mul3)
    G2 = FiniteGroupoid.from_json(G.to_json())
    assert G2.objects == G.objects
    assert G2.morphisms == G.morphisms
    assert G2.compose_table == G.compose_table
    assert G2.identities == G.identities
    assert validate(G2)
