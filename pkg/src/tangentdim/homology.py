"""Simplicial complexes, rational Betti numbers and pushouts along retract inclusions.

Simplicial complexes stand in for CW complexes.  A simplicial pushout is
only a model of the CW pushout when no simplex is collapsed by the gluing;
:func:`simplicial_pushout` checks this by counting simplices per dimension
and flags the square otherwise.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from .catcore import (
    AdmissibleSquare,
    Category,
    DimensionFunction,
    MorphismClass,
    Opposite,
    PushoutSquare,
    SectionRetractionWitness,
    run_dimension_harness,
)
from .finset import _UnionFind
from .modrank import rank_q
from .monoid import NAT_ADD, SEQ_ADD, seq
from .report import NA, CheckRecord, ViolationReport
from .snf import IntMatrix


class SimplicialError(ValueError):
    pass


class SimplicialComplex:
    """Vertices in a fixed order and the downward closure of ``facets``."""

    def __init__(self, vertices: Sequence[Any], facets: Iterable[Iterable[Any]], name: str = "K"):
        self.vertices = tuple(vertices)
        self.index = {v: i for i, v in enumerate(self.vertices)}
        if len(self.index) != len(self.vertices):
            raise SimplicialError("duplicate vertices")
        self.name = name
        simplices = set()
        for F in facets:
            F = tuple(sorted({self.index[v] for v in F}))
            if not F:
                raise SimplicialError("empty facet")
            for k in range(1, len(F) + 1):
                simplices.update(itertools.combinations(F, k))
        for i in range(len(self.vertices)):
            simplices.add((i,))
        by_dim: Dict[int, List[tuple]] = {}
        for s in simplices:
            by_dim.setdefault(len(s) - 1, []).append(s)
        self._by_dim = {k: sorted(v) for k, v in by_dim.items()}
        self._set = simplices
        self.key = (self.vertices, tuple(sorted(simplices)))
        self._hash = hash(self.key)

    @property
    def dim(self) -> int:
        return max(self._by_dim) if self._by_dim else -1

    def simplices(self, k: int) -> List[tuple]:
        """``k``-simplices as sorted tuples of vertex indices."""
        return self._by_dim.get(k, [])

    def count(self, k: int) -> int:
        return len(self._by_dim.get(k, []))

    def f_vector(self) -> Tuple[int, ...]:
        return tuple(self.count(k) for k in range(self.dim + 1))

    def has_simplex(self, verts: Iterable[Any]) -> bool:
        idx = tuple(sorted({self.index[v] for v in verts}))
        return idx in self._set

    def facets(self) -> List[Tuple[Any, ...]]:
        out = []
        for s in self._set:
            if not any(len(t) == len(s) + 1 and set(s) <= set(t) for t in self._by_dim.get(len(s), [])):
                out.append(tuple(self.vertices[i] for i in s))
        return sorted(out, key=lambda f: [self.index[v] for v in f])

    def boundary_matrix(self, k: int) -> IntMatrix:
        """``d_k``: rows are ``(k-1)``-simplices, columns ``k``-simplices."""
        rows, cols = self.simplices(k - 1), self.simplices(k)
        pos = {s: i for i, s in enumerate(rows)}
        M = IntMatrix.zeros(len(rows), len(cols))
        if k <= 0:
            return M
        for j, s in enumerate(cols):
            for i in range(len(s)):
                M.rows[pos[s[:i] + s[i + 1 :]]][j] = (-1) ** i
        return M

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * self.count(k) for k in range(self.dim + 1))

    def to_json(self) -> Dict:
        return {"vertices": list(self.vertices), "facets": [list(f) for f in self.facets()]}

    def __eq__(self, other):
        return self is other or (isinstance(other, SimplicialComplex) and self.key == other.key)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return self.name


def complex_from_json(d: Dict, name: str = "K") -> SimplicialComplex:
    def h(x):
        return tuple(h(v) for v in x) if isinstance(x, list) else x

    verts = [h(v) for v in d["vertices"]]
    return SimplicialComplex(verts, [[h(v) for v in F] for F in d["facets"]], name)


class SimplicialMap:
    def __init__(self, dom: SimplicialComplex, cod: SimplicialComplex, vmap: Dict[Any, Any], check: bool = True):
        self.dom, self.cod = dom, cod
        self.vmap = {v: vmap[v] for v in dom.vertices}
        if check:
            for v, w in self.vmap.items():
                if w not in cod.index:
                    raise SimplicialError(f"{v!r} -> {w!r} is not a vertex")
            for F in dom.facets():
                if not cod.has_simplex(self.vmap[v] for v in F):
                    raise SimplicialError(f"image of {F!r} is not a simplex")

    def __call__(self, v):
        return self.vmap[v]

    def then(self, g: "SimplicialMap") -> "SimplicialMap":
        return SimplicialMap(self.dom, g.cod, {v: g(self(v)) for v in self.dom.vertices}, check=False)

    def is_injective(self) -> bool:
        return len(set(self.vmap.values())) == len(self.vmap)

    def __repr__(self):
        return "{" + ", ".join(f"{v!r}->{w!r}" for v, w in self.vmap.items()) + "}"


class SimplicialCategory(Category):
    name = "Simp"

    def identity(self, X):
        return SimplicialMap(X, X, {v: v for v in X.vertices}, check=False)

    def compose(self, g, f):
        if f.cod != g.dom:
            raise ValueError(f"cannot compose: {f.cod!r} vs {g.dom!r}")
        return f.then(g)

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def equal(self, f, g):
        return f.dom == g.dom and f.cod == g.cod and f.vmap == g.vmap

    def describe(self, x):
        return x.name if isinstance(x, SimplicialComplex) else repr(x)

    def inverse(self, f):
        if len(f.cod.vertices) != len(f.dom.vertices) or not f.is_injective():
            return None
        try:
            return SimplicialMap(f.cod, f.dom, {w: v for v, w in f.vmap.items()})
        except SimplicialError:
            return None

    def pushout(self, f, s):
        return simplicial_pushout(f, s)

    def pullback(self, f, r):
        return None

    def homs(self, X, Y):
        return None


SIMP = SimplicialCategory()
SIMP_OP = Opposite(SIMP, "simplicial^op")


def simplicial_pushout(g: SimplicialMap, s: SimplicialMap) -> PushoutSquare:
    """Pushout of ``C <-g- A -s-> B``; ``i0: B -> P`` and ``i1: C -> P``.

    Flags ``cell-collapse`` when the simplex counts differ from
    ``#C_k + #B_k - #A_k`` in some dimension.
    """
    A, B, C = s.dom, s.cod, g.cod
    if g.dom != A:
        raise SimplicialError("span legs must share a domain")
    tagged = [("C", c) for c in C.vertices] + [("B", b) for b in B.vertices]
    uf = _UnionFind(tagged)
    order = {t: i for i, t in enumerate(tagged)}
    for a in A.vertices:
        uf.union(("B", s(a)), ("C", g(a)), order.__getitem__)
    rep = {t: uf.find(t) for t in tagged}
    # name each class by its first member in C-then-B order
    name: Dict[Any, Any] = {}
    for t in tagged:
        name.setdefault(rep[t], t)
    verts = []
    for t in tagged:
        v = name[rep[t]]
        if v not in verts:
            verts.append(v)
    label = lambda t: name[rep[t]]  # noqa: E731
    facets = [[label(("C", c)) for c in F] for F in C.facets()] + [[label(("B", b)) for b in F] for F in B.facets()]
    P = SimplicialComplex(verts, facets, name=f"({C.name} +_{A.name} {B.name})")
    iB = SimplicialMap(B, P, {b: label(("B", b)) for b in B.vertices}, check=False)
    iC = SimplicialMap(C, P, {c: label(("C", c)) for c in C.vertices}, check=False)
    flags = []
    top = max(P.dim, B.dim, C.dim, 0)
    if any(P.count(k) != C.count(k) + B.count(k) - A.count(k) for k in range(top + 1)):
        flags.append("cell-collapse")
    if not s.is_injective():
        flags.append("s-not-injective")

    def copair(u: SimplicialMap, w: SimplicialMap) -> SimplicialMap:
        # u: B -> X, w: C -> X agreeing on A
        table = {}
        for b in B.vertices:
            table[iB(b)] = u(b)
        for c in C.vertices:
            table[iC(c)] = w(c)
        return SimplicialMap(P, u.cod, table)

    return PushoutSquare(g, s, P, iB, iC, copair=copair, flags=flags)


# -- Betti numbers ----------------------------------------------------------


def betti(K: SimplicialComplex, nmax: Optional[int] = None) -> Tuple[int, ...]:
    """``B_0 .. B_nmax`` over the rationals (default ``nmax = dim K``)."""
    if nmax is None:
        nmax = max(K.dim, 0)
    ranks = {k: rank_q(K.boundary_matrix(k)) for k in range(1, nmax + 2)}
    ranks[0] = 0
    return tuple(K.count(n) - ranks[n] - ranks[n + 1] for n in range(nmax + 1))


def betti_sequence_dimension() -> DimensionFunction:
    return DimensionFunction(SEQ_ADD, lambda K: seq(betti(K)), name="betti")


def classical_dim(K: SimplicialComplex) -> int:
    """Largest facet size minus one (0 for the empty complex)."""
    return max(K.dim, 0)


# -- fixtures ---------------------------------------------------------------


def point(label: Any = 0) -> SimplicialComplex:
    return SimplicialComplex([label], [[label]], "pt")


def points(n: int) -> SimplicialComplex:
    return SimplicialComplex(list(range(n)), [[i] for i in range(n)], f"{n}pts")


def edge() -> SimplicialComplex:
    return SimplicialComplex([0, 1], [[0, 1]], "I")


def circle(n: int = 3) -> SimplicialComplex:
    return SimplicialComplex(list(range(n)), [[i, (i + 1) % n] for i in range(n)], "S1")


def disk() -> SimplicialComplex:
    return SimplicialComplex([0, 1, 2], [[0, 1, 2]], "D2")


def sphere() -> SimplicialComplex:
    return SimplicialComplex(list(range(4)), [list(F) for F in itertools.combinations(range(4), 3)], "S2")


def wedge_of_circles() -> SimplicialComplex:
    return SimplicialComplex([0, 1, 2, 3, 4], [[0, 1], [1, 2], [0, 2], [0, 3], [3, 4], [0, 4]], "S1vS1")


def torus() -> SimplicialComplex:
    facets = []
    for i in range(7):
        facets.append([i, (i + 1) % 7, (i + 3) % 7])
        facets.append([i, (i + 2) % 7, (i + 3) % 7])
    return SimplicialComplex(list(range(7)), facets, "T2")


def simplex(k: int) -> SimplicialComplex:
    return SimplicialComplex(list(range(k + 1)), [list(range(k + 1))], f"D{k}")


def cone(K: SimplicialComplex, apex: Any = "c") -> SimplicialComplex:
    return SimplicialComplex(list(K.vertices) + [apex], [list(F) + [apex] for F in K.facets()], f"C{K.name}")


def disjoint_union(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    verts = [(0, v) for v in K.vertices] + [(1, v) for v in L.vertices]
    facets = [[(0, v) for v in F] for F in K.facets()] + [[(1, v) for v in F] for F in L.facets()]
    return SimplicialComplex(verts, facets, f"({K.name} + {L.name})")


def complex_corpus() -> List[SimplicialComplex]:
    return [point(), points(2), edge(), circle(), circle(4), disk(), sphere(), wedge_of_circles(), torus(), simplex(3)]


def inclusion(A: SimplicialComplex, B: SimplicialComplex, vmap: Optional[Dict] = None) -> SimplicialMap:
    return SimplicialMap(A, B, vmap if vmap is not None else {v: v for v in A.vertices})


# -- pushouts along retract inclusions -------------------------------------


@dataclass
class RetractPushout:
    """Pushout of ``C <-g- A -s-> B`` together with the offered retraction ``r`` of ``s``."""

    square: PushoutSquare
    r: Optional[SimplicialMap]
    flags: List[str] = field(default_factory=list)
    label: str = ""

    @property
    def apex(self):
        return self.square.apex

    @property
    def applicable(self) -> bool:
        return not self.flags


def is_retraction_of(r: Optional[SimplicialMap], s: SimplicialMap) -> bool:
    return r is not None and r.dom == s.cod and r.cod == s.dom and all(r(s(a)) == a for a in s.dom.vertices)


def is_subcomplex_inclusion(s: SimplicialMap) -> bool:
    return s.is_injective()


def pushout_along_retract_inclusion(
    g: SimplicialMap, s: SimplicialMap, r: Optional[SimplicialMap], label: str = ""
) -> RetractPushout:
    sq = simplicial_pushout(g, s)
    flags = list(sq.flags)
    if not is_subcomplex_inclusion(s):
        flags.append("s-not-inclusion")
    if not is_retraction_of(r, s):
        flags.append("no-retraction")
    return RetractPushout(sq, r, sorted(set(flags)), label)


def mayer_vietoris_check(po: RetractPushout, nmax: int = 3) -> ViolationReport:
    """``B_n(P) + B_n(A) == B_n(B) + B_n(C)`` for ``n <= nmax``."""
    rep = ViolationReport("mayer-vietoris" + (f"[{po.label}]" if po.label else ""))
    g, s = po.square.f, po.square.s
    A, B, C, P = s.dom, s.cod, g.cod, po.apex
    if not po.applicable:
        for n in range(nmax + 1):
            rep.add(CheckRecord(f"betti-{n}", NA, {"reason": ", ".join(po.flags)}))
        return rep
    bP, bA, bB, bC = (betti(K, nmax) for K in (P, A, B, C))
    for n in range(nmax + 1):
        lhs, rhs = NAT_ADD.op(bP[n], bA[n]), NAT_ADD.op(bB[n], bC[n])
        rep.record(f"betti-{n}", lhs == rhs, {"P": bP[n], "A": bA[n], "B": bB[n], "C": bC[n]}, lhs, rhs)
    return rep


def naive_betti_equation(po: RetractPushout, nmax: int = 3) -> bool:
    """The equation evaluated without looking at witnesses."""
    g, s = po.square.f, po.square.s
    b = [betti(K, nmax) for K in (po.apex, s.dom, s.cod, g.cod)]
    return all(b[0][n] + b[1][n] == b[2][n] + b[3][n] for n in range(nmax + 1))


def _whisker(A: SimplicialComplex, at: Any, new: Any, name: str) -> Tuple[SimplicialComplex, SimplicialMap, SimplicialMap]:
    """``A`` plus an edge from ``at`` to a new vertex; returns (B, s, r)."""
    B = SimplicialComplex(list(A.vertices) + [new], list(A.facets()) + [[at, new]], name)
    s = inclusion(A, B)
    r = SimplicialMap(B, A, {**{v: v for v in A.vertices}, new: at})
    return B, s, r


def mv_fixtures() -> List[RetractPushout]:
    """Named retract-inclusion pushouts, including two negative ones."""
    out = []
    pt, S1 = point(), circle()

    # wedge of two circles
    out.append(
        pushout_along_retract_inclusion(
            inclusion(pt, S1), inclusion(pt, S1), SimplicialMap(S1, pt, {v: 0 for v in S1.vertices}), "wedge"
        )
    )
    # A = B
    T = torus()
    out.append(
        pushout_along_retract_inclusion(
            inclusion(S1, T, {0: 0, 1: 1, 2: 3}), inclusion(S1, S1), inclusion(S1, S1), "identity-leg"
        )
    )
    # circle with a disjoint disk retracting to a vertex
    B = SimplicialComplex(list(S1.vertices) + ["a", "b", "c"], list(S1.facets()) + [["a", "b", "c"]], "S1+D2")
    r = SimplicialMap(B, S1, {0: 0, 1: 1, 2: 2, "a": 0, "b": 0, "c": 0})
    out.append(pushout_along_retract_inclusion(inclusion(S1, circle()), inclusion(S1, B), r, "disjoint-disk"))
    # sphere wedge torus
    S2 = sphere()
    out.append(
        pushout_along_retract_inclusion(
            inclusion(pt, T), inclusion(pt, S2), SimplicialMap(S2, pt, {v: 0 for v in S2.vertices}), "torus-v-sphere"
        )
    )
    # disk glued to a circle along an edge
    I, D = edge(), disk()
    out.append(
        pushout_along_retract_inclusion(
            inclusion(I, S1), inclusion(I, D), SimplicialMap(D, I, {0: 0, 1: 1, 2: 0}), "disk-on-arc"
        )
    )
    # sphere at the wedge point of two circles
    W = wedge_of_circles()
    out.append(
        pushout_along_retract_inclusion(
            inclusion(pt, S2), inclusion(pt, W), SimplicialMap(W, pt, {v: 0 for v in W.vertices}), "sphere-v-wedge"
        )
    )
    # a collar on a circle, then glued into the torus
    cyl = mapping_cylinder(inclusion(S1, S1))
    cyl_s = SimplicialMap(S1, cyl, {a: ("A", a) for a in S1.vertices})
    cyl_r = SimplicialMap(cyl, S1, {v: v[1] for v in cyl.vertices})
    out.append(pushout_along_retract_inclusion(inclusion(S1, T, {0: 0, 1: 1, 2: 3}), cyl_s, cyl_r, "collar"))
    # two hairs on a circle
    P2 = points(2)
    hairs = SimplicialComplex([0, 1, "x", "y"], [[0, "x"], [1, "y"]], "2hairs")
    out.append(
        pushout_along_retract_inclusion(
            inclusion(P2, S1),
            inclusion(P2, hairs),
            SimplicialMap(hairs, P2, {0: 0, 1: 1, "x": 0, "y": 1}),
            "two-hairs",
        )
    )
    # whiskered equator of a sphere
    Bw, sw, rw = _whisker(S1, 0, "w", "S1+w")
    out.append(pushout_along_retract_inclusion(inclusion(S1, S2), sw, rw, "whiskered-equator"))
    # g a retraction: A is a whiskered circle collapsing onto the circle
    A2, s2, r2 = _whisker(S1, 0, "w", "S1+w")
    B2, s3, r3 = _whisker(A2, "w", "b", "S1+w+b")
    out.append(pushout_along_retract_inclusion(r2, s3, r3, "retraction-leg"))
    # negative: the equator in two hemispheres, no retraction exists
    north, south = cone(S1, "n"), cone(S1, "s")
    out.append(pushout_along_retract_inclusion(inclusion(S1, north), inclusion(S1, south), None, "equator"))
    # negative: g collapses a triangle attached along the whisker
    B3 = SimplicialComplex(list(A2.vertices) + ["b"], list(A2.facets()) + [[0, "w", "b"]], "S1+w+tri")
    r4 = SimplicialMap(B3, A2, {0: 0, 1: 1, 2: 2, "w": "w", "b": "w"})
    out.append(pushout_along_retract_inclusion(r2, inclusion(A2, B3), r4, "collapse"))
    return out


def find_simplicial_retraction(s: SimplicialMap) -> Optional[SimplicialMap]:
    """Exhaustive search for ``r`` with ``r o s == 1`` (small complexes only)."""
    A, B = s.dom, s.cod
    fixed = {s(a): a for a in A.vertices}
    free = [b for b in B.vertices if b not in fixed]
    for imgs in itertools.product(A.vertices, repeat=len(free)):
        vm = {**fixed, **dict(zip(free, imgs))}
        if all(A.has_simplex(vm[v] for v in F) for F in B.facets()):
            return SimplicialMap(B, A, vm, check=False)
    return None


# -- balloon ----------------------------------------------------------------


def balloon() -> SimplicialComplex:
    """An edge ``o - e`` with a solid tetrahedron attached at ``o``."""
    return SimplicialComplex(["o", "e", "t0", "t1", "t2"], [["o", "e"], ["o", "t0", "t1", "t2"]], "Bl")


def balloon_counterexample() -> ViolationReport:
    """Classical dimension fails the dimension equation on the balloon square."""
    Bl, I = balloon(), edge()
    # l sends the tetrahedron end to 0, r sends it to 1
    l = SimplicialMap(Bl, I, {"o": 0, "e": 1, "t0": 0, "t1": 0, "t2": 0})
    r = SimplicialMap(Bl, I, {"o": 1, "e": 0, "t0": 1, "t1": 1, "t2": 1})
    l_sec = SimplicialMap(I, Bl, {0: "o", 1: "e"})
    r_sec = SimplicialMap(I, Bl, {0: "e", 1: "o"})
    left = [("o", "e"), ("t0", "e"), ("t1", "e"), ("t2", "e")]
    right = [("e", "o"), ("e", "t0"), ("e", "t1"), ("e", "t2")]
    P = SimplicialComplex(left + right, [left, right, [("o", "e"), ("e", "o")]], "Bl x_I Bl")
    pi0 = SimplicialMap(P, Bl, {v: v[0] for v in P.vertices})
    pi1 = SimplicialMap(P, Bl, {v: v[1] for v in P.vertices})
    rep = ViolationReport("balloon")
    rep.record("l-is-retraction", SIMP.equal(SIMP.compose(l, l_sec), SIMP.identity(I)))
    rep.record("r-is-retraction", SIMP.equal(SIMP.compose(r, r_sec), SIMP.identity(I)))
    rep.record("square-commutes", SIMP.equal(SIMP.compose(l, pi0), SIMP.compose(r, pi1)))
    rep.record("balloon-contractible", betti(Bl, 3) == (1, 0, 0, 0), {"betti": betti(Bl, 3)})
    dP, dI, dB = classical_dim(P), classical_dim(I), classical_dim(Bl)
    rep.record(
        "classical-dimension-equation",
        dP + dI == dB + dB,
        {"dim_P": dP, "dim_I": dI, "dim_Bl": dB},
        f"{dP}+{dI}",
        f"{dB}+{dB}",
    )
    bP, bI, bB = seq(betti(P)), seq(betti(I)), seq(betti(Bl))
    rep.record("betti-equation", SEQ_ADD.op(bP, bI) == SEQ_ADD.op(bB, bB), None, SEQ_ADD.op(bP, bI), SEQ_ADD.op(bB, bB))
    return rep


# -- mapping cylinders -------------------------------------------------------


def mapping_cylinder(f: SimplicialMap, tag_a: str = "A", tag_x: str = "X") -> SimplicialComplex:
    """Ordered simplicial mapping cylinder on vertices ``(tag_a, a)`` and ``(tag_x, x)``.

    For ``a0 < .. < ak`` a simplex of the domain, the cylinder has the
    simplices ``{a0..ai} + f{ai..ak}``.
    """
    A, X = f.dom, f.cod
    verts = [(tag_a, a) for a in A.vertices] + [(tag_x, x) for x in X.vertices]
    facets = [[(tag_x, x) for x in F] for F in X.facets()]
    for k in range(A.dim + 1):
        for s in A.simplices(k):
            vs = [A.vertices[i] for i in s]
            for i in range(len(vs)):
                facets.append([(tag_a, a) for a in vs[: i + 1]] + [(tag_x, f(a)) for a in vs[i:]])
    return SimplicialComplex(verts, facets, f"M({f.dom.name}->{f.cod.name})")


def double_mapping_cylinder(f: SimplicialMap, g: SimplicialMap) -> SimplicialComplex:
    """``M_f`` and ``M_g`` glued along their common copy of ``A``."""
    if f.dom != g.dom:
        raise SimplicialError("maps must share a domain")
    Mf = mapping_cylinder(f, "A", "X")
    Mg = mapping_cylinder(g, "A", "Y")
    verts = list(Mf.vertices) + [v for v in Mg.vertices if v[0] == "Y"]
    return SimplicialComplex(verts, list(Mf.facets()) + list(Mg.facets()), f"DMC({f.cod.name},{g.cod.name})")


# -- sampling ---------------------------------------------------------------


def _extend(A: SimplicialComplex, rng: random.Random, steps: int, tag: str):
    """Grow ``A`` by cones on simplices and disjoint pieces; returns (B, s, r)."""
    verts = list(A.vertices)
    facets = [list(F) for F in A.facets()]
    rmap = {v: v for v in A.vertices}
    current = A
    for t in range(steps):
        new = (tag, t)
        if rng.random() < 0.2 or current.dim < 0:
            # a disjoint edge retracting to one vertex of A
            other = (tag, t, "x")
            target = rng.choice(A.vertices)
            verts += [new, other]
            facets.append([new, other])
            rmap[new] = rmap[other] = target
        else:
            k = rng.randint(0, min(current.dim, 1))
            sigma = [current.vertices[i] for i in rng.choice(current.simplices(k))]
            verts.append(new)
            facets.append(sigma + [new])
            rmap[new] = rmap[rng.choice(sigma)]
        current = SimplicialComplex(verts, facets, f"{A.name}+{tag}{t + 1}")
    s = SimplicialMap(A, current, {v: v for v in A.vertices})
    r = SimplicialMap(current, A, rmap)
    return current, s, r


def sample_simplicial_squares(
    budget: int, seed: int = 0, with_flagged: bool = False
) -> List[Tuple[AdmissibleSquare, RetractPushout]]:
    """Witnessed squares in simplicial^op, half with each kind of ``f``.

    Squares whose simplicial pushout collapses cells are redrawn.
    """
    rng = random.Random(seed)
    base = [point(), points(2), edge(), circle(), disk(), wedge_of_circles(), sphere(), circle(4)]
    out = []
    attempts = 0
    while len(out) < budget and attempts < 20 * max(budget, 1):
        attempts += 1
        if rng.random() < 0.5:
            A = rng.choice(base)
            C, g, g_ret = _extend(A, rng, rng.randint(0, 2), "c")
            f_class = MorphismClass(as_retraction=SectionRetractionWitness(section=g_ret, retraction=g))
        else:
            C = rng.choice(base)
            A, g_sec, g = _extend(C, rng, rng.randint(0, 2), "a")
            f_class = MorphismClass(as_section=SectionRetractionWitness(section=g, retraction=g_sec))
        B, s, r = _extend(A, rng, rng.randint(0, 3), "b")
        po = pushout_along_retract_inclusion(g, s, r, label=f"A={A.name} B={B.name} C={C.name}")
        if po.flags and not with_flagged:
            continue
        sq = SIMP_OP.pullback(g, s)
        rw = SectionRetractionWitness(section=r, retraction=s)
        out.append((AdmissibleSquare(sq, rw, f_class, po.label), po))
    return out


def betti_dimension_check(budget: int = 100, seed: int = 0) -> ViolationReport:
    pairs = sample_simplicial_squares(budget, seed)
    return run_dimension_harness(SIMP_OP, betti_sequence_dimension(), [a for a, _ in pairs], "simplicial-op/betti")


def witness_configuration_report(budget: int = 100, seed: int = 0) -> Dict[str, Dict[str, int]]:
    """Pass counts split by whether ``f`` is a section or a retraction (opposite-side kinds)."""
    out: Dict[str, Dict[str, int]] = {}
    for adm, po in sample_simplicial_squares(budget, seed):
        kind = adm.f_class.kind
        ok = mayer_vietoris_check(po).ok
        d = out.setdefault(kind, {"pass": 0, "fail": 0})
        d["pass" if ok else "fail"] += 1
    return dict(sorted(out.items()))

