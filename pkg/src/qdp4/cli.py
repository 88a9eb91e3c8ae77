"""Command-line front end: JSON in, JSON out, documented exit codes.

Exit codes: 0 success (iso: isomorphic), 1 negative verdict / failed suite,
2 parse error, 3 not smooth, 4 unsupported field.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import kgroups, picard, selftest
from .fields import (GF, QQ, FieldMismatchError, UnsupportedFieldError, factor,
                     field_from_descriptor, rational_roots, scalar_from_json,
                     scalar_to_json)
from .groupoids import (FiniteGroupoid, GroupoidFunctor, build_psi, check_functor,
                        check_groupoid, find_splitting, injective_on_iso_classes,
                        verify_heavy_separability)
from .hyperoct import CycleSignature, fiber_product
from .pencil import (NotSmoothError, QuadricPencil, ResourceLimitError,
                     UnsupportedSplittingError, canonical_invariant, charts,
                     count_points, discriminant_quintic, galois_signature,
                     is_smooth, isomorphic, point_configuration, predicted_count,
                     reconstruct)
from .wpline import PointConfiguration, aut_group

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_PARSE = 2
EXIT_NOT_SMOOTH = 3
EXIT_UNSUPPORTED = 4


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseFailure(str(exc)) from exc


class ParseFailure(Exception):
    pass


def _load_pencil(path: str) -> QuadricPencil:
    obj = _load_json(path)
    try:
        return QuadricPencil.from_json(obj)
    except UnsupportedFieldError:
        raise
    except (KeyError, ValueError, TypeError) as exc:
        raise ParseFailure(f"bad pencil file {path}: {exc}") from exc


def parse_field_spec(spec: str):
    spec = spec.strip()
    if spec in ("Q", "q", "QQ", "rationals"):
        return QQ
    if "^" in spec:
        p, k = spec.split("^", 1)
        return GF(int(p), int(k))
    return GF(int(spec))


# ---------------------------------------------------------------------------
# Report assembly
# ---------------------------------------------------------------------------

def analysis_report(P: QuadricPencil) -> dict:
    field = P.field
    quintic = [scalar_to_json(c) for c in discriminant_quintic(P)]
    smooth = is_smooth(P)
    report = {"field": field.descriptor(), "quintic": quintic, "smooth": smooth}
    if not smooth:
        return report
    g, _ = charts(P)
    if field.is_rational:
        factors = [{"root": scalar_to_json(r), "degree": 1, "multiplicity": m}
                   for r, m in rational_roots(g)]
    else:
        factors = [{"coeffs": [scalar_to_json(c) for c in f.coeffs],
                    "degree": f.degree, "multiplicity": m}
                   for f, m in factor(g)]
    report["degenerate_points"] = {
        "affine_factors": factors,
        "includes_infinity": g.degree < 5,
    }
    invariant = canonical_invariant(P)
    splitting = invariant[0].lam.field if hasattr(invariant[0].lam, "field") else QQ
    report["splitting_field"] = splitting.descriptor()
    report["canonical_invariant"] = [nf.to_json() for nf in invariant]
    config = point_configuration(P)
    full_aut = aut_group(config)
    if field.is_rational:
        base_aut = full_aut
    else:
        base_aut = [(m, perm) for m, perm in full_aut
                    if m.entries_in_subfield(field.k)]
    report["aut_p_order"] = len(base_aut)
    report["aut_p_geometric_order"] = len(full_aut)
    report["aut_x_order"] = 16 * len(base_aut)
    try:
        sig = galois_signature(P)
    except UnsupportedFieldError:
        sig = None
    if sig is None:
        report["signature"] = None
        report["minimal"] = None
        report["ranks"] = None
    else:
        report["signature"] = sig.to_json()
        report["minimal"] = picard.is_minimal(sig)
        report["ranks"] = {
            "picard": kgroups.g_invariant_rank(sig, "picard"),
            "wpl_k0": kgroups.g_invariant_rank(sig, "wpl"),
            "torsion": kgroups.g_invariant_rank(sig, "torsion"),
            "surface_k0": kgroups.g_invariant_rank(sig, "surface-k0"),
        }
    return report


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_analyze(args) -> int:
    P = _load_pencil(args.pencil)
    report = analysis_report(P)
    if not report["smooth"]:
        print("pencil is not smooth: discriminant quintic has a repeated root",
              file=sys.stderr)
        _emit(report)
        return EXIT_NOT_SMOOTH
    _emit(report)
    return EXIT_OK


def cmd_iso(args) -> int:
    P1 = _load_pencil(args.a)
    P2 = _load_pencil(args.b)
    cert = isomorphic(P1, P2)
    if cert is None:
        _emit({"isomorphic": False, "certificate": None})
        return EXIT_NEGATIVE
    _emit({"isomorphic": True,
           "certificate": {"moebius": cert.moebius.to_json(),
                           "base_rational": cert.base_rational}})
    return EXIT_OK


def cmd_aut(args) -> int:
    obj = _load_json(args.file)
    if isinstance(obj, dict) and "A" in obj and "B" in obj:
        P = QuadricPencil.from_json(obj)
        config = point_configuration(P)
        field = P.field
    elif isinstance(obj, dict) and "points" in obj:
        field = field_from_descriptor(obj["field"])
        config = PointConfiguration.from_json(field, obj["points"])
    else:
        raise ParseFailure("expected a pencil {field,A,B} or a configuration "
                           "{field,points}")
    full = aut_group(config)
    if field.is_rational or config.field.is_rational:
        base = full
    else:
        base = [(m, p) for m, p in full if m.entries_in_subfield(field.k)]
    elements = [{"moebius": m.to_json(), "permutation": [i + 1 for i in perm],
                 "base_rational": (m, perm) in base} for m, perm in full]
    _emit({"aut_p_order": len(base),
           "aut_p_geometric_order": len(full),
           "aut_x_order": 16 * len(base),
           "fiber_product_order": len(fiber_product(full)),
           "elements": elements})
    return EXIT_OK


def cmd_minimal(args) -> int:
    P = _load_pencil(args.pencil)
    sig = galois_signature(P)
    _emit({"signature": sig.to_json(),
           "picard_invariant_rank": picard.invariant_rank(sig),
           "minimal": picard.is_minimal(sig)})
    return EXIT_OK


def cmd_count_points(args) -> int:
    P = _load_pencil(args.pencil)
    k = args.ext
    n = count_points(P, k)
    sig = galois_signature(P)
    predicted = predicted_count(sig, P.field.p, k)
    _emit({"p": P.field.p, "k": k, "count": n, "predicted": predicted,
           "signature": sig.to_json(), "consistent": n == predicted})
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    field = parse_field_spec(args.field)
    lam = scalar_from_json(field, args.lam)
    mu = scalar_from_json(field, args.mu)
    P = reconstruct((lam, mu), field)
    _emit(P.to_json())
    return EXIT_OK


def cmd_kgroups_ranks(args) -> int:
    try:
        sig = CycleSignature.from_json(json.loads(args.signature))
    except (json.JSONDecodeError, ValueError, TypeError) as exc:
        raise ParseFailure(f"bad signature: {exc}") from exc
    n = sig.total()
    report = {
        "signature": sig.to_json(),
        "points": n,
        "picard": kgroups.g_invariant_rank(sig, "picard", n),
        "wpl_k0": kgroups.g_invariant_rank(sig, "wpl", n),
        "torsion": kgroups.g_invariant_rank(sig, "torsion", n),
        "surface_k0": kgroups.g_invariant_rank(sig, "surface-k0", n)
        if n == 5 else None,
        "minimal": sig.plus_cycles() == 0,
        "conic_bundle": kgroups.conic_bundle_ranks(n, sig,
                                                   sig.plus_cycles() == 0),
    }
    _emit(report)
    return EXIT_OK


def cmd_kgroups_gram(args) -> int:
    if args.space == "wpl":
        gram = kgroups.wpl_gram(args.points)
        basis = ["O", "O_pt"] + [f"S{i + 1}" for i in range(args.points)]
    elif args.space == "surface":
        gram = kgroups.full_k0_gram()
        basis = ["rank"] + ["H", "E1", "E2", "E3", "E4", "E5"] + ["s2"]
    else:
        gram = kgroups.atom_gram()
        basis = ["b0"] + ["H", "E1", "E2", "E3", "E4", "E5"]
    _emit({"space": args.space, "basis": basis,
           "gram": [[str(x) for x in row] for row in gram]})
    return EXIT_OK


def cmd_groupoid_verify(args) -> int:
    obj = _load_json(args.file)
    try:
        G = FiniteGroupoid.from_json(obj)
    except (KeyError, ValueError, TypeError) as exc:
        raise ParseFailure(f"bad groupoid file: {exc}") from exc
    witness = check_groupoid(G)
    report = {"valid": witness is None, "witness": witness}
    ok = witness is None
    if args.functor and ok:
        fobj = _load_json(args.functor)
        try:
            target = FiniteGroupoid.from_json(fobj["target"])
            phi = GroupoidFunctor(G, target, fobj["objects"], fobj["morphisms"])
        except (KeyError, ValueError, TypeError) as exc:
            raise ParseFailure(f"bad functor file: {exc}") from exc
        fwitness = check_functor(phi)
        report["functor_valid"] = fwitness is None
        report["functor_witness"] = fwitness
        if fwitness is None:
            injective = injective_on_iso_classes(phi)
            report["injective_on_iso_classes"] = injective
            heavy = False
            if injective:
                classes = G.iso_classes()
                base_objects = {}
                isos = {}
                psi_by_base = {}
                found_all = True
                for cls in classes:
                    x0 = cls[0]
                    psi = find_splitting(phi, x0)
                    if psi is None:
                        found_all = False
                        break
                    psi_by_base[x0] = psi
                    for x in cls:
                        base_objects[x] = x0
                        isos[x] = G.hom(x0, x)[0]
                report["splitting_found"] = found_all
                if found_all:
                    Psi = build_psi(phi, psi_by_base, base_objects, isos)
                    heavy, hw = verify_heavy_separability(phi, Psi)
                    report["heavy_separability_witness"] = hw
            else:
                report["splitting_found"] = None
            report["heavily_separable"] = heavy
            ok = heavy
        else:
            ok = False
    _emit(report)
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_selftest(args) -> int:
    failures = selftest.run_all()
    return EXIT_OK if failures == 0 else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdp4",
        description="Exact invariants of quartic del Pezzo surfaces given as "
                    "pencils of quadrics")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full invariant report for a pencil")
    p.add_argument("pencil")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("iso", help="decide isomorphism of two pencils")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(fn=cmd_iso)

    p = sub.add_parser("aut", help="automorphisms of the five degenerate points")
    p.add_argument("file", help="pencil or configuration JSON")
    p.set_defaults(fn=cmd_aut)

    p = sub.add_parser("minimal", help="Galois minimality verdict (prime fields)")
    p.add_argument("pencil")
    p.set_defaults(fn=cmd_minimal)

    p = sub.add_parser("count-points", help="exact point count over F_{p^k}")
    p.add_argument("pencil")
    p.add_argument("--ext", type=int, default=1, metavar="K")
    p.set_defaults(fn=cmd_count_points)

    p = sub.add_parser("reconstruct", help="diagonal pencil from (lambda, mu)")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--mu", dest="mu", required=True)
    p.add_argument("--field", default="Q", help="Q, p, or p^k")
    p.set_defaults(fn=cmd_reconstruct)

    p = sub.add_parser("kgroups", help="K-theory rank certificates")
    ksub = p.add_subparsers(dest="kcommand", required=True)
    kr = ksub.add_parser("ranks", help="invariant ranks for a cycle signature")
    kr.add_argument("--signature", required=True,
                    help='JSON cycle list, e.g. "[[5,-1]]"')
    kr.set_defaults(fn=cmd_kgroups_ranks)
    kg = ksub.add_parser("gram", help="Euler-form Gram matrices as JSON")
    kg.add_argument("--space", choices=("wpl", "surface", "atom"), default="wpl")
    kg.add_argument("--points", type=int, default=5,
                    help="number of weight-2 points (wpl space only)")
    kg.set_defaults(fn=cmd_kgroups_gram)

    p = sub.add_parser("groupoid", help="finite groupoid utilities")
    gsub = p.add_subparsers(dest="gcommand", required=True)
    gv = gsub.add_parser("verify", help="verify axioms and heavy separability")
    gv.add_argument("file")
    gv.add_argument("--functor", default=None)
    gv.set_defaults(fn=cmd_groupoid_verify)

    p = sub.add_parser("selftest", help="run the exhaustive invariant suites")
    p.set_defaults(fn=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ParseFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotSmoothError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_SMOOTH
    except (UnsupportedFieldError, UnsupportedSplittingError,
            FieldMismatchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except ValueError as exc:  # invalid scalars, normal forms, matrices
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
