"""Verification suites assembled from the registry.

Each function returns a :class:`ViolationReport` whose records are in a
fixed order, so equal inputs give byte-identical JSON.
"""

from __future__ import annotations

from typing import Any, List, Optional

from . import registry
from .finset import search_cartesian_tangent_finsetop
from .monoid import NAT_ADD, is_nat
from .report import FAIL, NA, PASS, CheckRecord, ViolationReport
from .tangent import (
    StrongDimensionData,
    check_strong_dimension,
    check_tangent_axioms,
    check_universality,
    check_weak_equation,
    reject_endofunctor_by_dimension,
)


class UsageError(ValueError):
    """A request that cannot be run as given (maps to exit code 2)."""


def _check_monoid(dim_monoid: str, requested: Optional[str]):
    if requested is not None and requested != dim_monoid:
        raise UsageError(f"dimension is valued in {dim_monoid!r}, not {requested!r}")


def verify_dim(category: str, dim: Optional[str] = None, monoid: Optional[str] = None, budget: int = 100, seed: int = 0):
    entry = registry.get_dimension(category, dim)
    _check_monoid(entry.monoid, monoid)
    rep = entry.harness(budget, seed)
    out = ViolationReport(f"verify-dim[{category},{entry.tag}]", corpus=rep.corpus, notes=list(rep.notes))
    out.extend(rep)
    out.notes.append(f"monoid={entry.monoid} budget={budget} seed={seed}")
    return out


def check_tangent(structure: str, category: Optional[str] = None, depth: int = 2) -> ViolationReport:
    """Axioms and universality to ``depth`` on the corpus, depth one on the extended corpus."""
    if depth < 1:
        raise UsageError("depth must be at least 1")
    entry = registry.get_structure(structure, category)
    cat = registry.get_category(entry.category)
    ts = entry.build()
    corpus, extended, maps = entry.corpus(), entry.extended(), entry.morphisms()
    rep = ViolationReport(
        f"check-tangent[{entry.category},{entry.tag}]@depth{depth}",
        corpus=[cat.describe(X) for X in corpus + extended],
    )
    rep.extend(check_tangent_axioms(cat, ts, corpus, maps, depth))
    for X in corpus:
        rep.extend(check_universality(cat, ts, X, depth), f"universality@{cat.describe(X)}")
    if extended:
        d1 = min(depth, 1)
        rep.extend(check_tangent_axioms(cat, ts, extended, [], d1), "extended")
        for X in extended:
            rep.extend(check_universality(cat, ts, X, d1), f"extended/universality@{cat.describe(X)}")
        rep.notes.append(f"extended corpus checked at depth {d1}")
    return rep


def _strong_constant(dim, ts, objects) -> Optional[Any]:
    """Read ``a`` off the first object of nonzero dimension."""
    m = dim.monoid
    for X in objects:
        d = dim(X)
        if d != m.unit:
            dT = dim(ts.T(X))
            if dT % d:
                return None
            return dT // d
    return None


def obstruct_structure(
    structure: str, category: Optional[str] = None, dim: Optional[str] = None, monoid: Optional[str] = None
) -> ViolationReport:
    """Weak equation on the weak corpus, plus the strong dichotomy where a rig dimension is registered."""
    entry = registry.get_structure(structure, category)
    cat = registry.get_category(entry.category)
    ts = entry.build()
    objects = (entry.weak_corpus or entry.corpus)()
    dims = registry.select_dims(entry.dims(), dim)
    for d in dims:
        _check_monoid(d.monoid.tag, monoid)
    rep = ViolationReport(f"obstruct[{entry.category},{entry.tag}]", corpus=[cat.describe(X) for X in objects])
    for d in dims:
        for X in objects:
            rep.add(check_weak_equation(ts, d, X))
    for d, objs in entry.strong():
        if dim is not None and dim not in (d.name,):
            continue
        a = _strong_constant(d, ts, objs)
        if a is None:
            rep.add(CheckRecord(f"strong[{d.name}]", NA, {"reason": "dim(TX) is not a multiple of dim(X)"}))
            continue
        rep.extend(check_strong_dimension(StrongDimensionData(d, a), ts, objs), f"strong[{d.name},a={a}]")
    return rep


def _symbolic_record(rep: ViolationReport) -> Optional[CheckRecord]:
    """For additive dimensions, write the weak equation as ``3n+u vs 3n+v`` when the offsets are constant."""
    offsets = set()
    for r in rep.records:
        w = r.witnesses
        if not all(is_nat(x) for x in (w.get("dim_X"), r.lhs, r.rhs)):
            return None
        n = w["dim_X"]
        offsets.add((r.lhs - 3 * n, r.rhs - 3 * n))
    if len(offsets) != 1:
        return None
    u, v = offsets.pop()
    ok = u == v
    eq = f"3n+{u} {'=' if ok else '!='} 3n+{v}"
    return CheckRecord("weak-equation-symbolic", PASS if ok else FAIL, {"equation": eq, "reduces_to": f"{u} = {v}"}, u, v)


def obstruct_endofunctor(category: str, tag: str, dim: Optional[str] = None, monoid: Optional[str] = None):
    entry = registry.get_endofunctor(category, tag)
    d = registry.endofunctor_dimension(entry, dim)
    _check_monoid(d.monoid.tag, monoid)
    rep = reject_endofunctor_by_dimension(entry.T_obj, d, entry.objects(), entry.describe, name=tag)
    if d.monoid is NAT_ADD:
        sym = _symbolic_record(rep)
        if sym is not None:
            rep.add(sym)
    return rep


def search_finsetop(max_card: int, check_sizes: int = 3):
    if max_card < 1:
        raise UsageError("--max-card must be at least 1")
    return search_cartesian_tangent_finsetop(max_card, check_sizes)


def run_all_weak(structures: Optional[List[str]] = None) -> ViolationReport:
    """Weak equation for every registered structure on every dimension and corpus object."""
    rep = ViolationReport("weak-equation-all")
    for tag in structures or registry.STRUCTURE_TAGS:
        cats = registry.trivial_categories() if tag == "trivial" else [None]
        for c in cats:
            sub = obstruct_structure(tag, c)
            rep.extend(
                ViolationReport(sub.name, [r for r in sub.records if r.check.startswith("weak-equation")]), sub.name
            )
    return rep
