"""Finite sets, looped graphs and polynomial functors.

Set^op squares are computed as pushouts in FinSet.  The :class:`Opposite`
wrapper from :mod:`tangentdim.catcore` only swaps directions and turns the
pushout into the pullback of the opposite category.
"""

from __future__ import annotations

import dataclasses
import itertools
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from .catcore import (
    AdmissibleSquare,
    CospanSquare,
    DimensionFunction,
    FiniteCarrierCategory,
    FinMap,
    FunctorData,
    MorphismClass,
    Opposite,
    PushoutSquare,
    SectionRetractionWitness,
    run_dimension_harness,
    sample_admissible_squares,
    subset_pullback_elements,
    transport_dimension,
)
from .monoid import NAT_ADD
from .report import FAIL, PASS, CheckRecord, ViolationReport
from .tangent import (
    TangentStructureData,
    check_additive_bundle,
    check_object_axioms,
    check_tangent_axioms,
    check_universality,
)

HOM_LIMIT = 200_000


class FinSetObj:
    """A finite set with a fixed element order."""

    __slots__ = ("elements", "_index", "_hash")

    def __init__(self, elements: Iterable[Any]):
        els = tuple(elements)
        index = {x: i for i, x in enumerate(els)}
        if len(index) != len(els):
            raise ValueError("duplicate elements")
        self.elements = els
        self._index = index
        self._hash = None

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self._index

    def __iter__(self):
        return iter(self.elements)

    def index(self, x) -> int:
        return self._index[x]

    def __eq__(self, other):
        return isinstance(other, FinSetObj) and self.elements == other.elements

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("FinSetObj", self.elements))
        return self._hash

    def __repr__(self):
        return "{" + ", ".join(repr(x) for x in self.elements) + "}"


def fset(*elements) -> FinSetObj:
    return FinSetObj(elements)


def srange(n: int) -> FinSetObj:
    return FinSetObj(range(n))


def fin_fn(dom: FinSetObj, cod: FinSetObj, mapping) -> FinMap:
    """A function from a dict or a sequence of images in domain order."""
    if not isinstance(mapping, dict):
        mapping = dict(zip(dom.elements, mapping))
    if set(mapping) != set(dom.elements):
        raise ValueError("mapping must be defined exactly on the domain")
    for y in mapping.values():
        if y not in cod:
            raise ValueError(f"{y!r} not in codomain")
    return FinMap(dom, cod, table=dict(mapping))


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b, key):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if key(rb) < key(ra):
            ra, rb = rb, ra
        self.parent[rb] = ra


def set_pushout(f: FinMap, s: FinMap) -> PushoutSquare:
    """Pushout of ``C <-f- B -s-> A`` in FinSet.

    Apex elements are tagged representatives ``(0, a)`` for ``a`` in ``A``
    and ``(1, c)`` for ``c`` in ``C``; each class is named by its smallest
    member in (tag, position) order.  A non-injective ``s`` is computed
    anyway and flagged.
    """
    A, C, B = s.cod, f.cod, s.dom
    tagged = [(0, a) for a in A.elements] + [(1, c) for c in C.elements]
    order = {t: i for i, t in enumerate(tagged)}
    uf = _UnionFind(tagged)
    for b in B.elements:
        uf.union((0, s(b)), (1, f(b)), order.__getitem__)
    reps = []
    seen = set()
    for t in tagged:
        r = uf.find(t)
        if r not in seen:
            seen.add(r)
            reps.append(r)
    P = FinSetObj(reps)
    i0 = FinMap(A, P, table={a: uf.find((0, a)) for a in A.elements})
    i1 = FinMap(C, P, table={c: uf.find((1, c)) for c in C.elements})
    members: Dict[Any, list] = {}
    for t in tagged:
        members.setdefault(uf.find(t), []).append(t)

    def copair(a: FinMap, c: FinMap) -> FinMap:
        Q = a.cod
        table = {}
        for rep, ms in members.items():
            vals = {(a if tag == 0 else c)(x) for tag, x in ms}
            if len(vals) != 1:
                raise ValueError("cocone does not agree on a glued class")
            table[rep] = vals.pop()
        return FinMap(P, Q, table=table)

    flags = [] if s.is_injective() else ["s-not-injective"]
    return PushoutSquare(f, s, P, i0, i1, copair=copair, flags=flags)


def section_of_surjection(f: FinMap) -> Optional[FinMap]:
    if not f.is_surjective():
        return None
    pick = {}
    for x in f.dom.elements:
        pick.setdefault(f(x), x)
    return FinMap(f.cod, f.dom, table=pick)


def retraction_of_injection(f: FinMap) -> Optional[FinMap]:
    if not f.is_injective():
        return None
    if len(f.dom) == 0:
        if len(f.cod) == 0:
            return FinMap(f.cod, f.dom, table={})
        return None
    inv = {f(x): x for x in f.dom.elements}
    default = f.dom.elements[0]
    return FinMap(f.cod, f.dom, table={y: inv.get(y, default) for y in f.cod.elements})


class FinSetCategory(FiniteCarrierCategory):
    name = "FinSet"

    def pullback(self, f, r):
        P = FinSetObj(subset_pullback_elements(f, r))
        pi0 = FinMap(P, r.dom, lambda t: t[0])
        pi1 = FinMap(P, f.dom, lambda t: t[1])

        def med(a, c):
            return FinMap(a.dom, P, lambda q: (a(q), c(q)))

        return CospanSquare(f, r, P, pi0, pi1, mediate=med)

    def pushout(self, f, s):
        return set_pushout(f, s)

    def homs(self, X, Y):
        if len(Y) ** len(X) > HOM_LIMIT:
            return None
        return [FinMap(X, Y, table=dict(zip(X.elements, imgs))) for imgs in itertools.product(Y.elements, repeat=len(X))]

    def classify(self, f):
        out = MorphismClass()
        r = retraction_of_injection(f)
        if r is not None:
            out.as_section = SectionRetractionWitness(section=f, retraction=r)
        s = section_of_surjection(f)
        if s is not None:
            out.as_retraction = SectionRetractionWitness(section=s, retraction=f)
        return out


FINSET = FinSetCategory()


FINSET_OP = Opposite(FINSET, "FinSet^op")


def cardinality_dimension() -> DimensionFunction:
    """Cardinality as a dimension on FinSet^op."""
    return DimensionFunction(NAT_ADD, lambda X: len(X.elements), name="card")


def finset_corpus(max_size: int = 4) -> List[FinSetObj]:
    return [srange(n) for n in range(max_size + 1)]


def sample_finsetop_squares(budget: int, seed: int = 0, max_size: int = 4) -> List[AdmissibleSquare]:
    return sample_admissible_squares(FINSET_OP, finset_corpus(max_size), budget, seed)


def finsetop_dimension_check(budget: int = 100, seed: int = 0) -> ViolationReport:
    squares = sample_finsetop_squares(budget, seed)
    return run_dimension_harness(FINSET_OP, cardinality_dimension(), squares, "FinSet^op/card")


# -- looped graphs ----------------------------------------------------------


class LoopedGraph:
    """A finite simple graph with a loop at every vertex.

    ``edges`` stores unordered non-loop pairs as sorted tuples of vertex
    positions' labels; loops are implicit.
    """

    __slots__ = ("vertices", "edges", "_adj")

    def __init__(self, vertices: Iterable[Any], edges: Iterable[Tuple[Any, Any]] = ()):
        self.vertices = vertices if isinstance(vertices, FinSetObj) else FinSetObj(vertices)
        es = set()
        for u, v in edges:
            if u not in self.vertices or v not in self.vertices:
                raise ValueError(f"edge ({u!r}, {v!r}) has an endpoint outside the vertex set")
            if u != v:
                es.add(self._key(u, v))
        self.edges = frozenset(es)
        self._adj = None

    def _key(self, u, v):
        iu, iv = self.vertices.index(u), self.vertices.index(v)
        return (u, v) if iu <= iv else (v, u)

    @property
    def elements(self):
        return self.vertices.elements

    def adjacent(self, u, v) -> bool:
        return u == v or self._key(u, v) in self.edges

    def sorted_edges(self):
        return sorted(self.edges, key=lambda e: (self.vertices.index(e[0]), self.vertices.index(e[1])))

    def __eq__(self, other):
        return isinstance(other, LoopedGraph) and self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return f"Graph(V={list(self.vertices.elements)}, E={[list(e) for e in self.sorted_edges()]})"


def complete_graph(n: int, prefix: str = "") -> LoopedGraph:
    vs = [f"{prefix}{i}" if prefix else i for i in range(n)]
    return LoopedGraph(vs, itertools.combinations(vs, 2))


def path_graph(n: int) -> LoopedGraph:
    return LoopedGraph(range(n), [(i, i + 1) for i in range(n - 1)])


class GraphCategory(FiniteCarrierCategory):
    """Looped graphs with adjacency-preserving vertex maps."""

    name = "Grph"

    def is_morphism(self, f) -> bool:
        return all(f.cod.adjacent(f(u), f(v)) for u, v in f.dom.edges)

    def pullback(self, f, r):
        P = LoopedGraph(subset_pullback_elements(f, r))
        es = [
            (x, y)
            for x, y in itertools.combinations(P.elements, 2)
            if r.dom.adjacent(x[0], y[0]) and f.dom.adjacent(x[1], y[1])
        ]
        P = LoopedGraph(P.vertices, es)
        return CospanSquare(
            f,
            r,
            P,
            FinMap(P, r.dom, lambda t: t[0]),
            FinMap(P, f.dom, lambda t: t[1]),
            mediate=lambda a, c: FinMap(a.dom, P, lambda q: (a(q), c(q))),
        )

    def pushout(self, f, s):
        vs = set_pushout(FinMap(f.dom.vertices, f.cod.vertices, f), FinMap(s.dom.vertices, s.cod.vertices, s))
        es = [(vs.i0(u), vs.i0(v)) for u, v in s.cod.edges] + [(vs.i1(u), vs.i1(v)) for u, v in f.cod.edges]
        P = LoopedGraph(vs.apex, es)
        i0 = FinMap(s.cod, P, table=vs.i0.table)
        i1 = FinMap(f.cod, P, table=vs.i1.table)

        def copair(a, c):
            m = vs.copair(FinMap(a.dom.vertices, a.cod.vertices, a), FinMap(c.dom.vertices, c.cod.vertices, c))
            return FinMap(P, a.cod, table=m.table)

        return PushoutSquare(f, s, P, i0, i1, copair=copair, flags=vs.flags)

    def homs(self, X, Y):
        if len(Y.elements) ** len(X.elements) > HOM_LIMIT:
            return None
        out = []
        for imgs in itertools.product(Y.elements, repeat=len(X.elements)):
            f = FinMap(X, Y, table=dict(zip(X.elements, imgs)))
            if self.is_morphism(f):
                out.append(f)
        return out


GRPH = GraphCategory()
GRPH_OP = Opposite(GRPH, "Grph^op")


def vertex_functor() -> FunctorData:
    """The vertex-set functor Grph^op -> FinSet^op."""
    return FunctorData(
        GRPH_OP,
        FINSET_OP,
        lambda G: G.vertices,
        lambda f: FinMap(f.dom.vertices, f.cod.vertices, f),
        name="V",
    )


def graph_corpus() -> List[LoopedGraph]:
    return [
        LoopedGraph([]),
        LoopedGraph([0]),
        LoopedGraph([0, 1]),
        complete_graph(2),
        path_graph(3),
        complete_graph(3),
        LoopedGraph([0, 1, 2], [(0, 1)]),
        path_graph(4),
        LoopedGraph([0, 1, 2, 3], [(0, 1), (1, 2), (2, 0), (2, 3)]),
    ]


def graph_dimension_check(budget: int = 50, seed: int = 0) -> ViolationReport:
    """Vertex count, transported from FinSet^op cardinality, on sampled Grph^op squares."""
    squares = sample_admissible_squares(GRPH_OP, graph_corpus(), budget, seed)
    dim = transport_dimension(vertex_functor(), cardinality_dimension(), [s.square for s in squares])
    report = run_dimension_harness(GRPH_OP, dim, squares, "Grph^op/vertices")
    report.notes.extend(dim.warnings)
    return report


# -- polynomial functors ----------------------------------------------------


@dataclass(frozen=True)
class PolyFunctor:
    """A finite sum of representables ``sum_i y^{E_i}``."""

    positions: Tuple[Any, ...]
    exponents: Tuple[FinSetObj, ...]

    @property
    def degree(self) -> int:
        return max((len(E) for E in self.exponents), default=0)

    def __repr__(self):
        if not self.positions:
            return "0"
        return " + ".join("y^" + repr(E) for E in self.exponents)


def poly(*exponent_sets) -> PolyFunctor:
    return PolyFunctor(tuple(range(len(exponent_sets))), tuple(FinSetObj(E) for E in exponent_sets))


@dataclass
class PolyMap:
    """A natural transformation: forward on positions, backward on directions.

    ``directions[i]`` maps ``E_cod(on_pos[i]) -> E_dom(i)``.
    """

    dom: PolyFunctor
    cod: PolyFunctor
    on_pos: Tuple[int, ...]
    directions: Tuple[FinMap, ...]


def poly_compose(g: PolyMap, f: PolyMap) -> PolyMap:
    dirs = tuple(
        FinMap(g.cod.exponents[g.on_pos[f.on_pos[i]]], f.dom.exponents[i], lambda x, i=i: f.directions[i](g.directions[f.on_pos[i]](x)))
        for i in range(len(f.on_pos))
    )
    return PolyMap(f.dom, g.cod, tuple(g.on_pos[j] for j in f.on_pos), dirs)


def poly_equal(f: PolyMap, g: PolyMap) -> bool:
    return (
        f.on_pos == g.on_pos
        and f.dom == g.dom
        and f.cod == g.cod
        and all(d1.table == d2.table for d1, d2 in zip(f.directions, g.directions))
    )


def poly_identity(p: PolyFunctor) -> PolyMap:
    return PolyMap(p, p, tuple(range(len(p.positions))), tuple(FinMap(E, E, lambda x: x) for E in p.exponents))


def poly_homs(p: PolyFunctor, q: PolyFunctor) -> List[PolyMap]:
    out = []
    for pos in itertools.product(range(len(q.positions)), repeat=len(p.positions)):
        choices = [FINSET.homs(q.exponents[j], p.exponents[i]) for i, j in enumerate(pos)]
        for dirs in itertools.product(*choices):
            out.append(PolyMap(p, q, tuple(pos), tuple(dirs)))
    return out


def poly_pullback(f: PolyMap, r: PolyMap):
    """Pullback in Poly: pull back positions, push out exponents."""
    pairs = [(i, j) for i in range(len(r.on_pos)) for j in range(len(f.on_pos)) if r.on_pos[i] == f.on_pos[j]]
    exps = []
    legs0, legs1 = [], []
    for i, j in pairs:
        po = set_pushout(f.directions[j], r.directions[i])
        exps.append(po.apex)
        legs0.append(po.i0)
        legs1.append(po.i1)
    P = PolyFunctor(tuple(range(len(pairs))), tuple(exps))
    pi0 = PolyMap(P, r.dom, tuple(i for i, _ in pairs), tuple(legs0))
    pi1 = PolyMap(P, f.dom, tuple(j for _, j in pairs), tuple(legs1))
    return P, pi0, pi1


def poly_retraction_witness(r: PolyMap) -> Optional[PolyMap]:
    """A section of ``r`` in Poly, found by search, or ``None``."""
    ident = poly_identity(r.cod)
    for s in poly_homs(r.cod, r.dom):
        if poly_equal(poly_compose(r, s), ident):
            return s
    return None


def _degree_record(label, P, A, B, C, r, f) -> CheckRecord:
    lhs = P.degree + B.degree
    rhs = A.degree + C.degree
    r_sec = poly_retraction_witness(r)
    f_sec = poly_retraction_witness(f)
    return CheckRecord(
        label,
        PASS if lhs == rhs else FAIL,
        {
            "apex": repr(P),
            "A": repr(A),
            "B": repr(B),
            "C": repr(C),
            "r_has_section": r_sec is not None,
            "f_has_section": f_sec is not None,
        },
        lhs,
        rhs,
    )


def _empty_map(p: PolyFunctor, q: PolyFunctor, on_pos) -> PolyMap:
    return PolyMap(p, q, tuple(on_pos), tuple(FinMap(q.exponents[j], p.exponents[i], table={}) for i, j in enumerate(on_pos)))


def poly_counterexample() -> ViolationReport:
    """Degree of polynomial functors on three pullback squares.

    The first square is the sum-of-monomials square whose degrees do not add
    up (``deg P + deg B = 3`` against ``deg A + deg C = 4``).  Each record
    also says whether the legs admit sections in Poly.
    """
    report = ViolationReport("poly-degree")
    B = poly([], [])
    A = poly([3], ["a", "b"])
    C = poly([1, 2], ["c"])
    r = _empty_map(A, B, [0, 1])
    f = _empty_map(C, B, [0, 1])
    P, _, _ = poly_pullback(f, r)
    report.add(_degree_record("sum-of-monomials", P, A, B, C, r, f))

    E = poly([], [])
    e = _empty_map(E, E, [0, 1])
    P2, _, _ = poly_pullback(e, e)
    report.add(_degree_record("all-empty-exponents", P2, E, E, E, e, e))

    # a Set^op square y^{c} <- y^{a} -> y^{a,b} on monomials
    Bm, Am, Cm = poly(["a"]), poly(["a", "b"]), poly(["c"])
    rm = PolyMap(Am, Bm, (0,), (fin_fn(Bm.exponents[0], Am.exponents[0], {"a": "a"}),))
    fm = PolyMap(Cm, Bm, (0,), (fin_fn(Bm.exponents[0], Cm.exponents[0], {"a": "c"}),))
    P3, _, _ = poly_pullback(fm, rm)
    report.add(_degree_record("monomials", P3, Am, Bm, Cm, rm, fm))
    return report


# -- Cartesian tangent structures on FinSet^op -------------------------------


@dataclass
class SingletonData:
    """Structure maps at the singleton, as FinSet functions (arrows reversed).

    ``e`` is the image of ``p``; ``plus`` sends ``t`` to a tagged element
    ``(tag, t')`` of the pushout ``T(*) +_* T(*)``; ``lift`` sends ``(t1, t2)``
    to ``t``; ``flip`` sends ``(t1, t2)`` to a pair.
    """

    k: int
    e: int
    plus: Tuple[Tuple[int, int], ...]
    lift: Tuple[int, ...] = ()
    flip: Tuple[Tuple[int, int], ...] = ()

    def describe(self) -> Dict[str, Any]:
        K = range(self.k)
        pairs = list(itertools.product(K, K))
        return {
            "card_T1": self.k,
            "p": {"*": self.e},
            "plus": {str(t): list(self.plus[t]) for t in K},
            "lift": {str(pq): self.lift[i] for i, pq in enumerate(pairs)} if self.lift else {},
            "flip": {str(pq): list(self.flip[i]) for i, pq in enumerate(pairs)} if self.flip else {},
        }


def cartesian_structure(data: SingletonData, name: Optional[str] = None) -> TangentStructureData:
    """Extend singleton data to all finite sets with ``T(X) = X x T(*)``."""
    K = tuple(range(data.k))
    pairs = list(itertools.product(K, K))
    lift_of = dict(zip(pairs, data.lift)) if data.lift else {}
    flip_of = dict(zip(pairs, data.flip)) if data.flip else {}
    cache: Dict[Any, FinSetObj] = {}

    def T_obj(X):
        if X not in cache:
            cache[X] = FinSetObj((x, t) for x in X.elements for t in K)
        return cache[X]

    def T_mor(f):
        # op f: X -> Y is a function Y -> X; T f is (y, t) -> (f(y), t)
        return FinMap(T_obj(f.dom), T_obj(f.cod), lambda yt: (f(yt[0]), yt[1]))

    def p(X):
        return FinMap(X, T_obj(X), lambda x: (x, data.e))

    def zero(X):
        return FinMap(T_obj(X), X, lambda xt: xt[0])

    def plus(X):
        sq = ts.T2(X)

        def fn(xt):
            tag, t2 = data.plus[xt[1]]
            leg = sq.pi0 if tag == 0 else sq.pi1
            return leg((xt[0], t2))

        return FinMap(T_obj(X), sq.apex, fn)

    def lift(X):
        return FinMap(T_obj(T_obj(X)), T_obj(X), lambda w: (w[0][0], lift_of[(w[0][1], w[1])]))

    def flip(X):
        def fn(w):
            a, b = flip_of[(w[0][1], w[1])]
            return ((w[0][0], a), b)

        TT = T_obj(T_obj(X))
        return FinMap(TT, TT, fn)

    ts = TangentStructureData(name or f"cartesian[{data.k}]", FINSET_OP, T_obj, T_mor, p, zero, plus, lift, flip)
    return ts


def _plus_targets(k: int, e: int) -> List[Tuple[int, int]]:
    """Tagged representatives of the pushout of ``e`` along itself."""
    return [(0, t) for t in range(k)] + [(1, t) for t in range(k) if t != e]


@dataclass
class CartesianSearchResult:
    found: List[SingletonData]
    report: ViolationReport
    rejected: Dict[int, Any]

    def to_dict(self) -> Dict[str, Any]:
        out = self.report.to_dict()
        out["found"] = [d.describe() for d in self.found]
        out["rejected"] = {str(k): v for k, v in sorted(self.rejected.items())}
        return out


def matches_trivial(ts: TangentStructureData, objects: Sequence[FinSetObj]) -> bool:
    """Map-for-map agreement with the trivial structure through ``X = X x {0}``.

    Every structure map must send the element over ``x`` to the element
    over ``x``, in each of ``X``, ``TX``, ``TTX`` and ``T2X``.
    """
    for X in objects:
        TX, TTX, sq = ts.T(X), ts.T(X, 2), ts.T2(X)
        if not (len(TX) == len(TTX) == len(sq.apex) == len(X)):
            return False
        over = {
            X: lambda x: x,
            TX: lambda x: (x, 0),
            TTX: lambda x: ((x, 0), 0),
            sq.apex: lambda x: sq.pi0((x, 0)),
        }
        for fam in (ts.p, ts.zero, ts.plus, ts.lift, ts.flip):
            f = fam(X)
            if any(f(over[f.dom](x)) != over[f.cod](x) for x in X.elements):
                return False
    return True


def search_cartesian_tangent_finsetop(max_card: int, check_sizes: int = 3) -> CartesianSearchResult:
    """All Cartesian tangent structures on FinSet^op with ``#T(*) <= max_card``.

    Sizes other than 1 and 2 are rejected by the dimension dichotomy
    ``(a - 1)(a - 2) = 0``.  For the rest the search is staged: ``p`` and
    ``+`` must first give an additive bundle, then ``lift`` must satisfy
    the axioms not involving ``flip``, then the full axioms and
    universality are checked on sets of size ``<= check_sizes``.
    """
    if max_card < 1:
        raise ValueError("max_card must be at least 1")
    objects = [srange(n) for n in range(check_sizes + 1)]
    rep = ViolationReport("search-finsetop", corpus=[f"#T(*)<={max_card}", f"objects<={check_sizes}"])
    found: List[SingletonData] = []
    rejected: Dict[int, Any] = {}
    for k in range(1, max_card + 1):
        if (k - 1) * (k - 2) != 0:
            rejected[k] = {"stage": "dimension", "reason": f"({k}-1)({k}-2) != 0 and {k}^2+2 != 3*{k}"}
            rep.record(f"card-{k}-rejected-by-dimension", True, {"weak": [k * k + 2, 3 * k]})
            continue
        survivors, diag = _stage_bundle(k, objects)
        if not survivors:
            rejected[k] = {"stage": "additive-bundle", "diagnostics": diag}
        for data in survivors:
            for lifted in _stage_lift(data, objects):
                for full in _stage_flip(lifted, objects):
                    found.append(full)
        if survivors and not any(d.k == k for d in found):
            rejected[k] = {"stage": "lift-or-flip"}
        rep.record(f"card-{k}-structures", True, {"count": sum(1 for d in found if d.k == k)})
    trivial_only = all(d.k == 1 and matches_trivial(cartesian_structure(d), objects) for d in found)
    rep.record("only-trivial", trivial_only and len(found) == 1, {"found": len(found)})
    return CartesianSearchResult(found, rep, rejected)


def _stage_bundle(k: int, objects):
    survivors = []
    diag = []
    for e in range(k):
        targets = _plus_targets(k, e)
        names = {t: "abcdefgh"[i] for i, t in enumerate(targets)}
        forced = {"unit-left": set(), "unit-right": set()}
        for plus in itertools.product(targets, repeat=k):
            data = SingletonData(k, e, tuple(plus))
            ts = cartesian_structure(data)
            ok = True
            laws = {}
            for X in objects:
                r = check_additive_bundle(FINSET_OP, ts.bundle(X))
                laws = {rec.check: rec.status for rec in r.records} if X == objects[1] else laws
                ok = ok and r.ok
            for law in forced:
                if laws.get(law) == PASS:
                    forced[law].add(tuple(names[v] for v in plus))
            if ok:
                survivors.append(data)
        diag.append(
            {
                "e": e,
                "pushout": [names[t] for t in targets],
                "unit-left-allows": sorted("".join(v) for v in forced["unit-left"]),
                "unit-right-allows": sorted("".join(v) for v in forced["unit-right"]),
                "forced": {law: _forced_values(forced[law], e) for law in forced},
            }
        )
    return survivors, diag


def _forced_values(allowed, e: int) -> Dict[str, str]:
    """Positions ``t != e`` where every allowed ``plus`` agrees, as ``+(t) = v``."""
    out = {}
    if not allowed:
        return out
    k = len(next(iter(allowed)))
    for t in range(k):
        vals = {v[t] for v in allowed}
        if t != e and len(vals) == 1:
            out[f"+({t})"] = vals.pop()
    return out


def _stage_lift(data: SingletonData, objects):
    k = data.k
    pairs = list(itertools.product(range(k), range(k)))
    ident = tuple(pairs)
    for lift in itertools.product(range(k), repeat=len(pairs)):
        cand = dataclasses.replace(data, lift=lift, flip=ident)
        ts = cartesian_structure(cand)
        ok = True
        for X in objects:
            r = check_object_axioms(FINSET_OP, ts, X, depth=1)
            if any(rec.status == FAIL and "flip" not in rec.check for rec in r.records):
                ok = False
                break
        if ok:
            yield cand


def _stage_flip(data: SingletonData, objects):
    k = data.k
    pairs = list(itertools.product(range(k), range(k)))
    for flip in itertools.product(pairs, repeat=len(pairs)):
        cand = dataclasses.replace(data, flip=flip)
        ts = cartesian_structure(cand)
        if check_tangent_axioms(FINSET_OP, ts, objects, [], depth=1).ok and all(
            check_universality(FINSET_OP, ts, X, 1).ok for X in objects
        ):
            yield cand
