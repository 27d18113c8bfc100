"""Command-line front end: ``yangdex <command> ...``.

Every command reads complex files (see :mod:`yangdex.io`) and prints a JSON
report; ``-o`` writes it to a file instead.  Exit status is 0 on success, 1
when the checked property fails or no witness exists, 2 on input errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path
from typing import Callable, Optional, Sequence

from . import cohomology, constructions, degree, index, lemmas
from .complex import EquivariantComplex, check_simplicial_map, classify_pseudomanifold
from .errors import NoWitnessError, ParseError, YangdexError
from .io import (
    ComplexFile,
    complex_to_dict,
    dumps,
    equivariant_to_dict,
    load_complex,
    load_json,
    parse_rational,
)

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


class Violation(Exception):
    """The checked property failed; carries the report to print."""

    def __init__(self, report: dict):
        super().__init__(report.get("verdict", "violation"))
        self.report = report


def _simplex(s) -> list[str]:
    return list(s)


def _cocycle(c) -> list[list[str]]:
    return c.support_names()


def _equivariant(cf: ComplexFile) -> EquivariantComplex:
    if cf.involution is None:
        raise ParseError("an involution is required for this command", path=cf.name)
    return cf.equivariant


def _aux(path: str, key: str):
    data, text = load_json(path)
    if not isinstance(data, dict) or key not in data:
        raise ParseError(f"missing key {key!r}", path=path, line=1)
    return data[key], text


def _load_labeling(cf: ComplexFile, path: str, sub: Optional[str] = None) -> lemmas.Labeling:
    raw, text = _aux(path, "labels")
    if not isinstance(raw, dict):
        raise ParseError("'labels' must map vertex names to integers", path=path, line=1)
    data, _ = load_json(path)
    m = data.get("m") or max((abs(v) for v in raw.values() if isinstance(v, int)), default=1)
    involution = cf.involution
    if sub is not None:
        xf = load_complex(sub)
        if xf.involution is None:
            raise ParseError("subcomplex file needs an involution", path=sub)
        involution = xf.involution
    return lemmas.labeling(cf.complex, raw, int(m), involution)


# ----------------------------------------------------------------- commands


def cmd_validate(args) -> dict:
    cf = load_complex(args.file)
    K = cf.complex
    pm = classify_pseudomanifold(K)
    return {
        "name": K.name,
        "valid": True,
        "dim": K.dim,
        "f_vector": list(K.f_vector),
        "euler_characteristic": K.euler_characteristic(),
        "warnings": list(K.warnings),
        "involution": "free" if cf.involution is not None else None,
        "pseudomanifold": {
            "almost": pm.is_almost_pseudomanifold,
            "strongly_connected": pm.is_strongly_connected,
            "pseudomanifold": pm.is_pseudomanifold,
            "closed": pm.is_closed,
            "boundary": pm.boundary.facet_names(),
        },
    }


def cmd_index(args) -> dict:
    E = _equivariant(load_complex(args.file))
    cert = index.but_certificate(E, verify=args.verify)
    rep = cert.index
    return {
        "name": E.name,
        "hind2": cert.hind2,
        "dim": cert.dim,
        "tind_lower": cert.tind_lower,
        "tind_upper": cert.tind_upper,
        "but_verdicts": {str(n): v for n, v in cert.verdicts.items()},
        "equivalence_applied": cert.equivalence_applied,
        "prop31_applicable": cert.prop31_applicable,
        "quotient_subdivided": rep.quotient.subdivided,
        "witnesses": [_cocycle(c) for c in rep.witnesses],
        "first_vanishing_power": rep.first_vanishing_power,
        "notes": list(cert.notes),
        "verdict": f"BUT_{cert.dim} certified" if cert.is_but_dim else
                   (f"not BUT_{cert.dim}" if cert.is_but_dim is False else "undetermined"),
    }


def cmd_betti(args) -> dict:
    K = load_complex(args.file).complex
    if args.verify:
        cohomology.coboundary_matrices(K, cohomology.GF2 if args.coeff == "z2" else cohomology.INT)
    if args.coeff == "z2":
        return {"name": K.name, "coeff": "z2", "betti": cohomology.betti2(K)}
    groups = [cohomology.integer_cohomology(K, k) for k in range(K.dim + 1)]
    return {"name": K.name, "coeff": "z",
            "cohomology": [{"free_rank": g.free_rank, "torsion": list(g.torsion)} for g in groups]}


def cmd_quotient(args) -> dict:
    E = _equivariant(load_complex(args.file))
    cc = index.characteristic_cocycle(E, verify=args.verify)
    qd = cc.quotient
    return {
        "name": E.name,
        "subdivided": qd.subdivided,
        "quotient": complex_to_dict(qd.complex),
        "projection": dict(qd.projection),
        "w": cc.broken_edges,
        "betti2": cohomology.betti2(qd.complex),
    }


def cmd_construct(args) -> dict:
    kind = args.kind
    if kind == "crosspoly":
        if len(args.inputs) != 1:
            raise ParseError("crosspoly takes one integer argument")
        try:
            n = int(args.inputs[0])
        except ValueError:
            raise ParseError("dimension must be an integer", token=args.inputs[0]) from None
        if n < 0:
            raise ParseError("dimension must be >= 0", token=args.inputs[0])
        return equivariant_to_dict(constructions.cross_polytope_sphere(n))
    if kind in ("barycentric", "suspend", "connsum"):
        if len(args.inputs) != 1:
            raise ParseError(f"{kind} takes one complex file")
        cf = load_complex(args.inputs[0])
        if kind == "barycentric":
            if cf.involution is None:
                return complex_to_dict(constructions.barycentric_subdivision(cf.complex))
            return equivariant_to_dict(constructions.barycentric_subdivision(cf.equivariant))
        if kind == "suspend":
            return equivariant_to_dict(constructions.suspension(_equivariant(cf)))
        facet = args.facet.split(",") if args.facet else None
        res = constructions.connected_sum_double(cf.complex, facet)
        return complex_to_dict(res.complex, res.involution)
    if kind == "camomile":
        if len(args.inputs) != 2:
            raise ParseError("camomile takes X and Z complex files")
        xf, zf = load_complex(args.inputs[0]), load_complex(args.inputs[1])
        res = constructions.camomile(_equivariant(xf), zf.complex)
        return complex_to_dict(res.complex, res.involution)
    raise ParseError(f"unknown construction {kind!r}")


def cmd_tucker(args) -> dict:
    cf = load_complex(args.file)
    L = _load_labeling(cf, args.labels, args.sub)
    edges = lemmas.complementary_edges(L)
    report = {"name": cf.name, "m": L.m, "complementary_edges": [_simplex(e) for e in edges],
              "verdict": "complementary edge found" if edges else "no complementary edge"}
    if not edges:
        raise Violation(report)
    return report


def cmd_fan(args) -> dict:
    cf = load_complex(args.file)
    L = _load_labeling(cf, args.labels, args.sub)
    simplices = lemmas.fan_simplices(L, args.same_sign)
    report = {"name": cf.name, "m": L.m, "same_sign_variant": args.same_sign,
              "alternating_simplices": [_simplex(s) for s in simplices],
              "count": len(simplices), "count_parity": len(simplices) % 2,
              "verdict": "alternating simplex found" if simplices else "no alternating simplex"}
    if L.relative:
        report["notes"] = ["labeling antipodal on the invariant subcomplex X"]
    if not simplices:
        raise Violation(report)
    return report


def cmd_shashkin(args) -> dict:
    cf = load_complex(args.file)
    L = _load_labeling(cf, args.labels, args.sub)
    try:
        pattern = [int(x) for x in args.pattern.split(",")]
    except ValueError:
        raise ParseError("pattern must be comma-separated integers", token=args.pattern) from None
    res = lemmas.shashkin_count(L, pattern, args.with_negation)
    report = {"name": cf.name, "pattern": pattern, "include_negation": args.with_negation,
              "count": res.count, "odd": res.odd,
              "simplices": [_simplex(s) for s in res.simplices],
              "verdict": "odd" if res.odd else "even"}
    if not res.odd:
        raise Violation(report)
    return report


def _load_points(path: str) -> lemmas.PointConfiguration:
    raw, text = _aux(path, "points")
    if isinstance(raw, list):
        pts = [[parse_rational(x, path, text) for x in p] for p in raw]
        return lemmas.PointConfiguration.from_positive(pts)
    if isinstance(raw, dict):
        try:
            return lemmas.PointConfiguration.of(
                {int(k): [parse_rational(x, path, text) for x in p] for k, p in raw.items()})
        except ValueError:
            raise ParseError("point keys must be integers", path=path) from None
    raise ParseError("'points' must be a list or an object", path=path, line=1)


def cmd_pn(args) -> dict:
    cf = load_complex(args.file)
    L = _load_labeling(cf, args.labels, args.sub)
    P = _load_points(args.points)
    try:
        w = lemmas.pn_witness(L, P)
    except NoWitnessError as exc:
        raise Violation({"name": cf.name, "verdict": "no witness", "message": str(exc)}) from None
    return {"name": cf.name, "simplex": _simplex(w.simplex), "labels": list(w.labels),
            "weights": [str(x) for x in w.weights], "notes": list(w.notes),
            "verdict": "origin in hull"}


def cmd_cover(args) -> dict:
    cf = load_complex(args.file)
    E = _equivariant(cf)
    raw, text = _aux(args.cover, "members")
    if not isinstance(raw, list):
        raise ParseError("'members' must be a list", path=args.cover, line=1)
    members, indices = [], []
    for i, m in enumerate(raw, start=1):
        if not isinstance(m, dict) or not isinstance(m.get("facets"), list):
            raise ParseError("member needs a 'facets' list", path=args.cover, line=None, token=i)
        members.append(E.complex.subcomplex(m["facets"], f"C{m.get('index', i)}"))
        indices.append(int(m.get("index", i)))
    fam = lemmas.CoverFamily(args.kind, tuple(members),
                             tuple(indices) if args.kind == "t" else None)
    try:
        w = lemmas.cover_check(E, fam, args.j)
    except NoWitnessError as exc:
        raise Violation({"name": cf.name, "kind": args.kind, "verdict": "no witness",
                         "message": str(exc)}) from None
    return {"name": cf.name, "kind": w.kind, "index": w.index, "point": _simplex(w.simplex),
            "antipode": _simplex(w.image), "verdict": "witness found"}


def cmd_kakutani(args) -> dict:
    cf = load_complex(args.file)
    E = _equivariant(cf)
    raw, text = _aux(args.selection, "selection")
    if not isinstance(raw, dict):
        raise ParseError("'selection' must map vertices to points", path=args.selection, line=1)
    sel = {k: [parse_rational(x, args.selection, text) for x in p] for k, p in raw.items()}
    try:
        w = lemmas.kakutani_pl_zero(E, sel)
    except NoWitnessError as exc:
        raise Violation({"name": cf.name, "verdict": "no witness", "message": str(exc)}) from None
    return {"name": cf.name, "simplex": _simplex(w.simplex),
            "weights": [str(x) for x in w.weights], "verdict": "origin in hull"}


def cmd_degree(args) -> dict:
    src, tgt = load_complex(args.source), load_complex(args.target)
    raw, _ = _aux(args.map, "map")
    if not isinstance(raw, dict):
        raise ParseError("'map' must map vertex names to vertex names", path=args.map, line=1)
    equivariant_on = None
    if src.involution is not None and tgt.involution is not None:
        equivariant_on = (src.involution, tgt.involution)
    f = check_simplicial_map(raw, src.complex, tgt.complex, equivariant_on=equivariant_on)
    if args.int:
        res = degree.degree_int(f, verify=args.verify)
    else:
        res = degree.degree_mod2(f, verify=args.verify)
    report = {"source": src.name, "target": tgt.name, "mod2": res.mod2, "integer": res.integer,
              "facet_used": _simplex(res.facet_used),
              "well_defined_verified": res.well_defined_verified}
    if equivariant_on is not None:
        chk = degree.odd_degree_check(f, *equivariant_on, verify=args.verify)
        report["equivariant"] = {
            "hind2_source": chk.hind2_source, "hind2_target": chk.hind2_target,
            "both_but": chk.both_but, "source_but": chk.source_but,
            "matches_index": chk.matches_index, "cohomology_agrees": chk.cohomology_agrees,
        }
        if not chk.ok:
            report["verdict"] = "inconsistent with the odd-degree criterion"
            raise Violation(report)
    report["verdict"] = f"deg2 = {res.mod2}"
    return report


def cmd_zeros(args) -> dict:
    cf = load_complex(args.file)
    raw, text = _aux(args.coords, "coordinates")
    if not isinstance(raw, dict):
        raise ParseError("'coordinates' must map vertices to points", path=args.coords, line=1)
    coords = {k: [parse_rational(x, args.coords, text) for x in p] for k, p in raw.items()}
    h = degree.PLMap.of(cf.complex, coords)
    rep = degree.pl_zeros(h, cf.involution)
    report = {"name": cf.name, "transversal": rep.transversal, "count": rep.count,
              "zeros": [{"facet": _simplex(s), "barycentric": [str(x) for x in t]}
                        for s, t in rep.zeros],
              "mod4": rep.mod4, "four_k_plus_two": rep.four_k_plus_two}
    if rep.four_k_plus_two is False:
        report["verdict"] = "zero count not 2 mod 4"
        raise Violation(report)
    report["verdict"] = f"{rep.count} zeros"
    return report


def cmd_relhyp(args) -> dict:
    zf, xf = load_complex(args.file), load_complex(args.sub)
    coeff = cohomology.GF2 if args.coeff == "z2" else cohomology.INT
    rep = index.relative_hypothesis(_equivariant(xf), zf.complex, args.dim, coeff,
                                    verify=args.verify)
    return {"Z": zf.name, "X": xf.name, "d": args.dim, "coeff": args.coeff,
            "holds": rep.holds, "hind2_X": rep.hind2, "index_ok": rep.index_ok,
            "restriction_trivial": rep.restriction_trivial, "notes": list(rep.notes),
            "verdict": "hypothesis holds" if rep.holds else "hypothesis fails"}


# -------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write the result to this file")
    common.add_argument("--verify", dest="verify", action="store_true", default=True,
                        help="re-run independent validations (default)")
    common.add_argument("--fast", dest="verify", action="store_false",
                        help="skip the extra validations")
    common.add_argument("--timing", action="store_true", help="add wall-clock timing")

    p = argparse.ArgumentParser(prog="yangdex",
                                description="Yang index, BUT certificates and discrete "
                                            "Borsuk-Ulam checkers for simplicial complexes")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func: Callable, help_text: str):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, "validate a complex file").add_argument("file")
    add("index", cmd_index, "hind2 and BUT certificate").add_argument("file")
    sp = add("betti", cmd_betti, "cohomology ranks / groups")
    sp.add_argument("file")
    sp.add_argument("--coeff", choices=["z2", "z"], default="z2")
    add("quotient", cmd_quotient, "orbit complex and characteristic cocycle").add_argument("file")
    sp = add("construct", cmd_construct, "build a standard complex")
    sp.add_argument("kind", choices=["crosspoly", "barycentric", "suspend", "camomile", "connsum"])
    sp.add_argument("inputs", nargs="+")
    sp.add_argument("--facet", help="comma-separated facet for connsum")

    def labeled(name, func, help_text):
        sp = add(name, func, help_text)
        sp.add_argument("file")
        sp.add_argument("labels")
        sp.add_argument("--sub", help="subcomplex file carrying the involution (relative form)")
        return sp

    labeled("tucker", cmd_tucker, "complementary edges of a labeling")
    labeled("fan", cmd_fan, "alternating simplices").add_argument("--same-sign", action="store_true")
    sp = labeled("shashkin", cmd_shashkin, "count simplices with a label pattern")
    sp.add_argument("--pattern", required=True, help="e.g. 1,-2,3")
    sp.add_argument("--with-negation", action="store_true")
    labeled("pn", cmd_pn, "origin-in-hull witness").add_argument("--points", required=True)
    sp = add("cover", cmd_cover, "LS / Tucker / Tucker-Bacon cover witness")
    sp.add_argument("file")
    sp.add_argument("cover")
    sp.add_argument("--kind", choices=["ls", "t", "tb"], required=True)
    sp.add_argument("--j", type=int)
    sp = add("kakutani", cmd_kakutani, "PL zero of an antipodal selection")
    sp.add_argument("file")
    sp.add_argument("--selection", required=True)
    sp = add("degree", cmd_degree, "degree of a simplicial map")
    sp.add_argument("source")
    sp.add_argument("target")
    sp.add_argument("map")
    sp.add_argument("--int", action="store_true", help="integer degree")
    sp = add("zeros", cmd_zeros, "zeros of a PL map to Q^d")
    sp.add_argument("file")
    sp.add_argument("--coords", required=True)
    sp = add("relhyp", cmd_relhyp, "relative Borsuk-Ulam hypothesis")
    sp.add_argument("file", help="the ambient complex Z")
    sp.add_argument("--sub", required=True, help="invariant subcomplex X with involution")
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--coeff", choices=["z2", "z"], default="z2")
    return p


def _emit(report: dict, args, out=None) -> None:
    text = dumps(report)
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        (out or sys.stdout).write(text)


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.ERROR)
    start = time.perf_counter()
    status = EXIT_OK
    try:
        report = args.func(args)
    except Violation as v:
        report, status = v.report, EXIT_VIOLATION
    except NoWitnessError as exc:
        report, status = {"verdict": "no witness", "message": str(exc)}, EXIT_VIOLATION
    except YangdexError as exc:
        err.write(dumps({"error": type(exc).__name__, "message": str(exc)}))
        return EXIT_INPUT
    if args.command != "construct":
        report = {"command": args.command, **report, "verified": args.verify}
    if args.timing:
        report["timing_seconds"] = round(time.perf_counter() - start, 6)
    _emit(report, args, out)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
