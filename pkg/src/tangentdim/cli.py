"""Command-line entry point.

Every subcommand builds a report; the full JSON goes to ``--out`` (or to
standard output with ``--format json``) and a short summary is printed.
Exit status: 0 when no record failed, 1 on a violation, 2 on bad usage or
malformed input.
"""

from __future__ import annotations

import argparse
import sys
from typing import Any, Dict, List, Optional, Sequence

from . import registry, schema, suites
from .catcore import FinMap
from .fingrp import GroupError, abelianization, group_from_json
from .finring import RingError, characteristic, maximal_order_element, ring_from_json
from .finset import FINSET, FinSetObj, fin_fn
from .homology import SimplicialError, betti, complex_from_json
from .modrank import MOD, FGModule, ModuleHom, ModuleUsageError, module_from_json, rank
from .monoid import MONOIDS
from .report import PASS, CheckRecord, ViolationReport, jsonable
from .snf import IntMatrix, smith_normal_form

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
DEFAULT_SEED = 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise suites.UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tangentdim", description="Dimension checks for tangent structures on finite categories.")
    common = _Parser(add_help=False)
    common.add_argument("--out", help="write the full JSON report here")
    common.add_argument("--format", choices=("json", "text"), default="text", help="standard output format")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify-dim", parents=[common], help="dimension equation on sampled admissible squares")
    v.add_argument("--category", required=True, choices=registry.VERIFY_CATEGORIES)
    v.add_argument("--dim")
    v.add_argument("--monoid", choices=sorted(MONOIDS))
    v.add_argument("--budget", type=int, default=100)

    t = sub.add_parser("check-tangent", parents=[common], help="tangent axioms and universality")
    t.add_argument("--structure", required=True, choices=registry.STRUCTURE_TAGS)
    t.add_argument("--category", choices=sorted(registry.CATEGORIES))
    t.add_argument("--depth", type=int, default=2)

    o = sub.add_parser("obstruct", parents=[common], help="weak and strong dimension obstructions")
    g = o.add_mutually_exclusive_group(required=True)
    g.add_argument("--structure", choices=registry.STRUCTURE_TAGS)
    g.add_argument("--endofunctor")
    o.add_argument("--category", choices=sorted(registry.CATEGORIES))
    o.add_argument("--dim")
    o.add_argument("--monoid", choices=sorted(MONOIDS))

    s = sub.add_parser("search-finsetop", parents=[common], help="exhaustive Cartesian search on FinSet^op")
    s.add_argument("--max-card", type=int, default=2)
    s.add_argument("--depth", type=int, default=3, help="largest set size the axioms are checked on")

    b = sub.add_parser("betti", parents=[common], help="Betti numbers of a simplicial complex")
    b.add_argument("--in", dest="inp", required=True)

    c = sub.add_parser("compute", parents=[common], help="pullback, pushout, snf, char, rank, abelianization")
    c.add_argument("op", choices=("pullback", "pushout", "snf", "char", "rank", "abelianization"))
    c.add_argument("--in", dest="inp", required=True)
    c.add_argument("--category", choices=("finset", "mod"), default="finset")
    return p


# -- input decoding ---------------------------------------------------------


def _finset(items, where: str) -> FinSetObj:
    if not isinstance(items, list):
        raise schema.SchemaError(f"field '{where}': expected list")
    try:
        return FinSetObj(schema.hashable(x) for x in items)
    except ValueError as exc:
        raise schema.SchemaError(f"field '{where}': {exc}") from None


def _finmap(d: Dict, where: str) -> FinMap:
    dom = _finset(schema.need(d, "dom", "list", where + "."), where + ".dom")
    cod = _finset(schema.need(d, "cod", "list", where + "."), where + ".cod")
    images = schema.need(d, "images", "list", where + ".")
    if len(images) != len(dom):
        raise schema.SchemaError(f"field '{where}.images': expected {len(dom)} entries, got {len(images)}")
    try:
        return fin_fn(dom, cod, [schema.hashable(y) for y in images])
    except ValueError as exc:
        raise schema.SchemaError(f"field '{where}.images': {exc}") from None


def _module(d: Any, where: str) -> FGModule:
    if not isinstance(d, dict):
        raise schema.SchemaError(f"field '{where}': expected object")
    schema.need(d, "gens", "int", where + ".")
    schema.int_matrix_rows(d.get("rels", []), where + ".rels")
    return module_from_json(d)


def _modhom(d: Dict, where: str) -> ModuleHom:
    dom = _module(schema.need(d, "dom", "object", where + "."), where + ".dom")
    cod = _module(schema.need(d, "cod", "object", where + "."), where + ".cod")
    rows = schema.int_matrix_rows(schema.need(d, "matrix", "list", where + "."), where + ".matrix")
    return ModuleHom(dom, cod, IntMatrix(rows, cod.gens, dom.gens))


def _describe_finmap(f: FinMap) -> List[Any]:
    return [f(x) for x in f.dom.elements]


def _describe_module(M: FGModule) -> Dict[str, Any]:
    free, tors = M.invariants()
    return {"gens": M.gens, "rels": M.rels.tolist(), "free_rank": free, "torsion": tors, "iso_type": repr(M)}


def _compute(op: str, doc: Dict, category: str) -> Dict[str, Any]:
    need = schema.need
    if op in ("pullback", "pushout"):
        legs = ("f", "r") if op == "pullback" else ("f", "s")
        if category == "finset":
            f, g = (_finmap(need(doc, k, "object"), k) for k in legs)
            sq = FINSET.pullback(f, g) if op == "pullback" else FINSET.pushout(f, g)
            desc, hom = (lambda X: list(X.elements)), _describe_finmap
        else:
            f, g = (_modhom(need(doc, k, "object"), k) for k in legs)
            sq = MOD.pullback(f, g) if op == "pullback" else MOD.pushout(f, g)
            desc, hom = _describe_module, (lambda h: h.M.tolist())
        if op == "pullback":
            if f.cod != g.cod:
                raise schema.SchemaError("fields 'f' and 'r' must share a codomain")
            return {"apex": desc(sq.apex), "pi0": hom(sq.pi0), "pi1": hom(sq.pi1)}
        if f.dom != g.dom:
            raise schema.SchemaError("fields 'f' and 's' must share a domain")
        return {"apex": desc(sq.apex), "i0": hom(sq.i0), "i1": hom(sq.i1), "flags": list(sq.flags)}
    if op == "snf":
        rows = schema.int_matrix_rows(need(doc, "matrix", "list"), "matrix")
        ncols = doc.get("ncols", len(rows[0]) if rows else 0)
        res = smith_normal_form(IntMatrix(rows, len(rows), ncols))
        return {
            "D": res.D.tolist(),
            "L": res.L.tolist(),
            "R": res.R.tolist(),
            "invariant_factors": res.invariant_factors,
            "rank": res.rank,
        }
    if op == "rank":
        M = _module(need(doc, "module", "object"), "module")
        return {"rank": rank(M), "module": _describe_module(M)}
    if op == "char":
        R = ring_from_json(need(doc, "ring", "object"))
        return {"order": R.order, "characteristic": characteristic(R), "maximal_order_element": maximal_order_element(R)}
    G = group_from_json(need(doc, "group", "object"))
    A = abelianization(G)
    return {
        "order": G.order,
        "abelianization_order": A.order,
        "classes": [A.rep[g] for g in G.elements],
        "representatives": list(A.elements),
    }


# -- orchestration ----------------------------------------------------------


def run(args: argparse.Namespace) -> Dict[str, Any]:
    """Run one subcommand and return the JSON-ready report."""
    cmd = args.command
    if cmd == "verify-dim":
        if args.budget < 0:
            raise suites.UsageError("--budget must be non-negative")
        return suites.verify_dim(args.category, args.dim, args.monoid, args.budget, args.seed).to_dict()
    if cmd == "check-tangent":
        return suites.check_tangent(args.structure, args.category, args.depth).to_dict()
    if cmd == "obstruct":
        if args.endofunctor:
            if not args.category:
                raise suites.UsageError("--endofunctor needs --category")
            return suites.obstruct_endofunctor(args.category, args.endofunctor, args.dim, args.monoid).to_dict()
        return suites.obstruct_structure(args.structure, args.category, args.dim, args.monoid).to_dict()
    if cmd == "search-finsetop":
        return suites.search_finsetop(args.max_card, args.depth).to_dict()
    doc = schema.load(args.inp)
    if cmd == "betti":
        K = complex_from_json(schema.need(doc, "complex", "object"))
        rep = ViolationReport("betti", corpus=[K.name])
        rep.add(
            CheckRecord(
                "betti",
                PASS,
                {"betti": list(betti(K)), "f_vector": list(K.f_vector()), "euler": K.euler_characteristic()},
            )
        )
        return rep.to_dict()
    result = _compute(args.op, doc, args.category)
    rep = ViolationReport(f"compute[{args.op}]")
    rep.add(CheckRecord(args.op, PASS, result))
    return rep.to_dict()


def _fail_count(report: Dict[str, Any]) -> int:
    return report["counts"]["fail"]


def _summary(report: Dict[str, Any]) -> str:
    c = report["counts"]
    lines = [f"{report['check']}: {report['status'].upper()} ({c['pass']} pass, {c['fail']} fail, {c['not-applicable']} n/a)"]
    for r in report["records"]:
        if r["status"] == "fail":
            lines.append(f"  FAIL {r['check']}: lhs={r['lhs']} rhs={r['rhs']} {r['witnesses']}")
            if len(lines) > 10:
                break
    lines.extend(f"  note: {n}" for n in report["notes"])
    if "found" in report:
        lines.append(f"  structures found: {len(report['found'])}")
        lines.extend(f"    {s}" for s in report["found"])
    if report["check"].startswith(("compute", "betti")):
        lines.append(f"  {report['records'][0]['witnesses']}")
    return "\n".join(lines)


def _dump(report: Dict[str, Any]) -> str:
    import json

    return json.dumps(jsonable(report), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        report = run(args)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (suites.UsageError, schema.SchemaError, registry.RegistryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KeyError as exc:
        print(f"error: missing field {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GroupError, RingError, SimplicialError, ModuleUsageError, ValueError, TypeError) as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = _dump(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text if args.format == "json" else _summary(report) + "\n")
    return EXIT_VIOLATION if _fail_count(report) else EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
