"""Tag lookups shared by the CLI and the acceptance suite.

Categories, dimensions, tangent structures and candidate endofunctors are
addressed by short string tags.  Everything is built lazily so importing
this module stays cheap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from . import finring, fingrp, finset, homology, modrank
from .catcore import Category, DimensionFunction
from .report import ViolationReport
from .tangent import TangentStructureData, trivial_structure


class RegistryError(KeyError):
    def __str__(self):
        return self.args[0] if self.args else "unknown tag"


CATEGORIES: Dict[str, Callable[[], Category]] = {
    "finset-op": lambda: finset.FINSET_OP,
    "graph-op": lambda: finset.GRPH_OP,
    "fingrp": lambda: fingrp.FINGRP,
    "ring-n": lambda: finring.RING_N,
    "ring-1": lambda: finring.RING_1,
    "ring-u": lambda: finring.RING_U,
    "mod": lambda: modrank.MOD,
    "simplicial-op": lambda: homology.SIMP_OP,
}

_RING_VARIANT = {"ring-n": "Ring_n", "ring-1": "Ring_1", "ring-u": "Ring_u"}


def get_category(tag: str) -> Category:
    try:
        return CATEGORIES[tag]()
    except KeyError:
        raise RegistryError(f"unknown category {tag!r}; choose from {sorted(CATEGORIES)}") from None


# -- dimensions -------------------------------------------------------------


@dataclass
class DimensionEntry:
    category: str
    tag: str
    monoid: str
    build: Callable[[], DimensionFunction]
    harness: Callable[[int, int], ViolationReport]


def _graph_vertices() -> DimensionFunction:
    return DimensionFunction(finset.cardinality_dimension().monoid, lambda G: len(G.vertices), name="vertices")


def _poly_degree() -> DimensionFunction:
    from .monoid import NAT_ADD

    return DimensionFunction(NAT_ADD, lambda P: P.degree, name="degree")


def _dimension_entries() -> List[DimensionEntry]:
    out = [
        DimensionEntry("finset-op", "card", "nat-add", finset.cardinality_dimension, finset.finsetop_dimension_check),
        DimensionEntry("graph-op", "vertices", "nat-add", _graph_vertices, finset.graph_dimension_check),
        DimensionEntry("fingrp", "order", "nat-mul", fingrp.cardinality_mul_dimension, fingrp.cardinality_mul_check),
        DimensionEntry("mod", "rank", "nat-add", modrank.rank_dimension, modrank.rank_dimension_check),
        DimensionEntry(
            "simplicial-op", "betti", "seq-add", homology.betti_sequence_dimension, homology.betti_dimension_check
        ),
        DimensionEntry("poly", "degree", "nat-add", _poly_degree, lambda budget, seed: finset.poly_counterexample()),
    ]
    for cat, variant in _RING_VARIANT.items():
        out.append(
            DimensionEntry(
                cat,
                "char",
                "lcm",
                lambda v=variant: finring.char_dimension(v),
                lambda budget, seed, v=variant: finring.char_dimension_check(v, budget, seed),
            )
        )
    return out


DIMENSIONS: Dict[Tuple[str, str], DimensionEntry] = {(e.category, e.tag): e for e in _dimension_entries()}
DEFAULT_DIMENSION = {cat: tag for cat, tag in DIMENSIONS}
VERIFY_CATEGORIES = sorted({cat for cat, _ in DIMENSIONS})


def get_dimension(category: str, tag: Optional[str] = None) -> DimensionEntry:
    if category not in DEFAULT_DIMENSION:
        raise RegistryError(f"no dimension registered for category {category!r}; choose from {VERIFY_CATEGORIES}")
    tag = tag or DEFAULT_DIMENSION[category]
    try:
        return DIMENSIONS[(category, tag)]
    except KeyError:
        known = sorted(t for c, t in DIMENSIONS if c == category)
        raise RegistryError(f"unknown dimension {tag!r} for {category}; choose from {known}") from None


# -- tangent structures -----------------------------------------------------


@dataclass
class StructureEntry:
    """A registered tangent structure with its corpora.

    ``corpus`` is checked to the requested depth; ``extended`` only to
    depth one.  ``dims`` and ``weak_corpus`` drive the weak equation.
    """

    tag: str
    category: str
    build: Callable[[], TangentStructureData]
    corpus: Callable[[], List[Any]]
    extended: Callable[[], List[Any]] = lambda: []
    morphisms: Callable[[], List[Any]] = lambda: []
    dims: Callable[[], List[DimensionFunction]] = lambda: []
    weak_corpus: Optional[Callable[[], List[Any]]] = None
    strong: Callable[[], List[Tuple[DimensionFunction, List[Any]]]] = lambda: []


def _trivial_entries() -> Dict[str, StructureEntry]:
    FS, srange = finset, finset.srange

    def finset_maps():
        return [
            FS.fin_fn(srange(3), srange(2), [0, 1, 1]),
            FS.fin_fn(srange(1), srange(3), [2]),
            FS.fin_fn(srange(0), srange(2), []),
            FS.fin_fn(srange(2), srange(2), [1, 0]),
        ]

    def graph_maps():
        G = FS.graph_corpus()
        cat = FS.GRPH
        out = []
        for X, Y in [(G[2], G[3]), (G[4], G[5]), (G[6], G[4])]:
            out.extend((cat.homs(X, Y) or [])[:2])
        return out

    def simplicial_maps():
        H = homology
        return [H.inclusion(H.point(0), H.edge()), H.inclusion(H.circle(), H.disk())]

    def small_groups():
        return [G for G in fingrp.groups_up_to(8) if G.order <= 6]

    def rings():
        return finring.ring_tangent_corpus() + finring.ring_tangent_extended_corpus()

    def ring_maps(unital):
        maps = finring.ring_morphisms()
        if unital:
            return maps
        Z2 = finring.zmod(2)
        return maps + [finring.ring_hom(Z2, finring.product_ring(Z2, Z2), lambda a: (a, 0))]

    specs = {
        "finset-op": (lambda: FS.finset_corpus(3), finset_maps, [FS.cardinality_dimension]),
        "graph-op": (lambda: FS.graph_corpus()[:7], graph_maps, [_graph_vertices]),
        "fingrp": (small_groups, fingrp.grp_morphisms, [fingrp.cardinality_mul_dimension]),
        "mod": (modrank.mod_corpus, modrank.mod_morphisms, [modrank.rank_dimension, modrank.cardinality_dimension]),
        "simplicial-op": (
            lambda: [homology.point(), homology.edge(), homology.circle(), homology.disk()],
            simplicial_maps,
            [homology.betti_sequence_dimension],
        ),
    }
    for cat, variant in _RING_VARIANT.items():
        specs[cat] = (
            rings,
            lambda u=(cat == "ring-u"): ring_maps(u),
            [lambda v=variant: finring.char_dimension(v)],
        )
    out = {}
    for cat, (corpus, maps, dims) in specs.items():
        out[cat] = StructureEntry(
            "trivial",
            cat,
            lambda c=cat: trivial_structure(get_category(c)),
            corpus,
            morphisms=maps,
            dims=lambda ds=dims: [d() for d in ds],
            strong=_fp_strong if cat == "mod" else (lambda: []),
        )
    return out


def _free_modules(n: int = 5) -> List[Any]:
    return [modrank.free_module(k) for k in range(n + 1)]


def _fp_strong():
    return [(modrank.fp_dimension(p, rig=True), [modrank.fp_space(p, k) for k in range(4)]) for p in (2, 3)]


def _mod_double() -> StructureEntry:
    def dims():
        return [
            modrank.rank_dimension(),
            modrank.cardinality_dimension(),
            modrank.fp_dimension(2),
            modrank.fp_dimension(3),
        ]

    def weak():
        return modrank.mod_corpus() + _free_modules(5) + [modrank.fp_space(2, 3), modrank.cyclic_module(4, 8)]

    return StructureEntry(
        "mod-double",
        "mod",
        modrank.mod_tangent,
        modrank.mod_corpus,
        morphisms=modrank.mod_morphisms,
        dims=dims,
        weak_corpus=weak,
        strong=_fp_strong,
    )


def _grp_ab() -> StructureEntry:
    return StructureEntry(
        "grp-ab",
        "fingrp",
        fingrp.grp_tangent,
        fingrp.grp_tangent_corpus,
        extended=fingrp.grp_tangent_extended_corpus,
        morphisms=fingrp.grp_morphisms,
        dims=lambda: [fingrp.cardinality_mul_dimension()],
        weak_corpus=lambda: fingrp.groups_up_to(16),
    )


def _ring_dual() -> StructureEntry:
    return StructureEntry(
        "ring-dual",
        "ring-u",
        finring.dual_numbers_tangent,
        finring.ring_tangent_corpus,
        extended=finring.ring_tangent_extended_corpus,
        morphisms=finring.ring_morphisms,
        dims=lambda: [finring.char_dimension("Ring_u")],
        weak_corpus=finring.ring_corpus,
    )


STRUCTURE_TAGS = ("trivial", "mod-double", "grp-ab", "ring-dual")


def get_structure(tag: str, category: Optional[str] = None) -> StructureEntry:
    """Resolve a structure tag; ``trivial`` needs a category (default ``mod``)."""
    if tag == "trivial":
        entries = _trivial_entries()
        cat = category or "mod"
        if cat not in entries:
            raise RegistryError(f"no trivial structure registered on {cat!r}; choose from {sorted(entries)}")
        return entries[cat]
    builders = {"mod-double": _mod_double, "grp-ab": _grp_ab, "ring-dual": _ring_dual}
    if tag not in builders:
        raise RegistryError(f"unknown structure {tag!r}; choose from {list(STRUCTURE_TAGS)}")
    entry = builders[tag]()
    if category is not None and category != entry.category:
        raise RegistryError(f"structure {tag!r} lives on {entry.category!r}, not {category!r}")
    return entry


def trivial_categories() -> List[str]:
    return sorted(_trivial_entries())


# -- candidate endofunctors -------------------------------------------------


@dataclass
class EndofunctorEntry:
    """An object map to be tested against the weak equation."""

    tag: str
    category: str
    T_obj: Callable[[Any], Any]
    objects: Callable[[], List[Any]]
    dims: Dict[str, Callable[[], DimensionFunction]] = field(default_factory=dict)
    describe: Callable[[Any], str] = repr


def _endofunctor_entries() -> List[EndofunctorEntry]:
    Z = modrank.free_module(1)

    def finset_triple(X):
        return finset.FinSetObj((x, i) for x in X.elements for i in range(3))

    return [
        EndofunctorEntry(
            "plus-one-free-rank",
            "mod",
            lambda V: modrank.direct_sum(V, Z),
            lambda: _free_modules(5),
            {"rank": modrank.rank_dimension},
        ),
        EndofunctorEntry(
            "cube",
            "mod",
            lambda V: modrank.direct_sum(V, V, V),
            lambda: [modrank.fp_space(p, k) for p in (2, 3) for k in range(4)],
            {"rank": modrank.rank_dimension, "dim_F2": lambda: modrank.fp_dimension(2), "dim_F3": lambda: modrank.fp_dimension(3)},
        ),
        EndofunctorEntry(
            "double",
            "mod",
            lambda V: modrank.direct_sum(V, V),
            lambda: modrank.mod_corpus() + _free_modules(5),
            {"rank": modrank.rank_dimension, "card": modrank.cardinality_dimension},
        ),
        EndofunctorEntry(
            "square",
            "fingrp",
            lambda G: fingrp.ProductGroup(G, G),
            lambda: fingrp.groups_up_to(8),
            {"order": fingrp.cardinality_mul_dimension},
            describe=lambda G: G.name,
        ),
        EndofunctorEntry(
            "triple",
            "finset-op",
            finset_triple,
            lambda: finset.finset_corpus(4),
            {"card": finset.cardinality_dimension},
        ),
    ]


ENDOFUNCTORS: Dict[Tuple[str, str], EndofunctorEntry] = {(e.category, e.tag): e for e in _endofunctor_entries()}


def get_endofunctor(category: str, tag: str) -> EndofunctorEntry:
    try:
        return ENDOFUNCTORS[(category, tag)]
    except KeyError:
        known = sorted(f"{c}/{t}" for c, t in ENDOFUNCTORS)
        raise RegistryError(f"unknown endofunctor {tag!r} on {category!r}; choose from {known}") from None


def endofunctor_dimension(entry: EndofunctorEntry, tag: Optional[str]) -> DimensionFunction:
    if tag is None:
        tag = next(iter(entry.dims))
    if tag not in entry.dims:
        raise RegistryError(f"dimension {tag!r} not registered for {entry.tag}; choose from {sorted(entry.dims)}")
    return entry.dims[tag]()


def select_dims(dims: Sequence[DimensionFunction], tag: Optional[str]) -> List[DimensionFunction]:
    if tag is None:
        return list(dims)
    chosen = [d for d in dims if tag in (d.name, d.name.split("[")[0])]
    if not chosen:
        raise RegistryError(f"dimension {tag!r} not registered here; choose from {sorted(d.name for d in dims)}")
    return chosen
