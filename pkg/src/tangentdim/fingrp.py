"""Finite groups, their abelianization, and the tangent structure ``G x Ab(G)``.

Groups are given by Cayley tables (validated exhaustively) or built from
other groups as products, quotients and pullback subgroups.  Built groups
multiply componentwise and never materialise a table, which keeps iterated
tangent bundles of small groups tractable.  Every group lists its identity
first.
"""

from __future__ import annotations

import itertools
from collections import deque
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .catcore import (
    AdmissibleSquare,
    CospanSquare,
    DimensionFunction,
    FiniteCarrierCategory,
    FinMap,
    MorphismClass,
    SectionRetractionWitness,
    run_dimension_harness,
    sample_admissible_squares,
    subset_pullback_elements,
)
from .monoid import NAT_MUL
from .report import ViolationReport
from .tangent import DifferentialBundleData, TangentStructureData


class GroupError(ValueError):
    pass


class FinGroup:
    """Common interface: ``elements`` (identity first), ``mul``, ``inv``, ``gens``."""

    name: str = "G"
    key: Any = None

    def __init__(self):
        self._index = None
        self._gens = None
        self._hash = None

    # subclasses set self.elements, self.one
    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, x) -> int:
        if self._index is None:
            self._index = {e: i for i, e in enumerate(self.elements)}
        return self._index[x]

    def __contains__(self, x):
        if self._index is None:
            self._index = {e: i for i, e in enumerate(self.elements)}
        return x in self._index

    @property
    def gens(self) -> List[Any]:
        if self._gens is None:
            self._gens = self._find_gens()
        return self._gens

    def _find_gens(self) -> List[Any]:
        gens: List[Any] = []
        span = {self.one}
        for x in self.elements:
            if x not in span:
                gens.append(x)
                span = generated_subgroup(self, gens)
        return gens

    def power(self, x, n: int):
        out = self.one
        for _ in range(n):
            out = self.mul(out, x)
        return out

    def element_order(self, x) -> int:
        k, y = 1, x
        while y != self.one:
            y = self.mul(y, x)
            k += 1
        return k

    def is_abelian(self) -> bool:
        g = self.gens
        return all(self.mul(a, b) == self.mul(b, a) for a in g for b in g)

    def __eq__(self, other):
        return self is other or (isinstance(other, FinGroup) and self.key == other.key)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key)
        return self._hash

    def __repr__(self):
        return self.name


class TableGroup(FinGroup):
    """A group given by a full multiplication table, checked on construction."""

    def __init__(self, name: str, elements: Sequence[Any], mul: Callable[[Any, Any], Any], identity=None):
        super().__init__()
        els = list(elements)
        if identity is None:
            identity = els[0]
        els.remove(identity)
        els.insert(0, identity)
        self.elements = tuple(els)
        self.one = identity
        self.name = name
        idx = {e: i for i, e in enumerate(self.elements)}
        if len(idx) != len(self.elements):
            raise GroupError("duplicate elements")
        n = len(self.elements)
        table = []
        for a in self.elements:
            row = []
            for b in self.elements:
                c = mul(a, b)
                if c not in idx:
                    raise GroupError(f"{a!r}*{b!r} = {c!r} is not an element")
                row.append(idx[c])
            table.append(row)
        self._table = table
        self._index = idx
        for i in range(n):
            if table[0][i] != i or table[i][0] != i:
                raise GroupError("identity law fails")
        for i in range(n):
            if 0 not in table[i]:
                raise GroupError(f"{self.elements[i]!r} has no inverse")
        for i in range(n):
            ti = table[i]
            for j in range(n):
                rij = ti[j]
                tj = table[j]
                for k in range(n):
                    if table[rij][k] != ti[tj[k]]:
                        raise GroupError("associativity fails")
        self._inv = [table[i].index(0) for i in range(n)]
        self.key = ("table", name, self.elements, tuple(map(tuple, table)))

    def mul(self, a, b):
        return self.elements[self._table[self._index[a]][self._index[b]]]

    def inv(self, a):
        return self.elements[self._inv[self._index[a]]]

    def to_json(self) -> Dict:
        return {
            "elements": list(self.elements),
            "table": [[self.elements[k] for k in row] for row in self._table],
            "id": self.one,
        }


def group_from_json(d: Dict, name: str = "G") -> TableGroup:
    """Build a group from ``{"elements", "table", "id"}``; table entries are elements."""
    els = [_hashable(e) for e in d["elements"]]
    table = [[_hashable(e) for e in row] for row in d["table"]]
    if len(table) != len(els) or any(len(r) != len(els) for r in table):
        raise GroupError("table must be square over the element list")
    idx = {e: i for i, e in enumerate(els)}
    return TableGroup(name, els, lambda a, b: table[idx[a]][idx[b]], _hashable(d.get("id", els[0])))


def _hashable(x):
    return tuple(_hashable(v) for v in x) if isinstance(x, list) else x


class ProductGroup(FinGroup):
    def __init__(self, G: FinGroup, H: FinGroup):
        super().__init__()
        self.G, self.H = G, H
        self.one = (G.one, H.one)
        self.name = f"({G.name} x {H.name})"
        self.key = ("prod", G.key, H.key)
        self._elements = None

    @property
    def elements(self):
        if self._elements is None:
            self._elements = tuple(itertools.product(self.G.elements, self.H.elements))
        return self._elements

    @property
    def order(self):
        return self.G.order * self.H.order

    def mul(self, a, b):
        return (self.G.mul(a[0], b[0]), self.H.mul(a[1], b[1]))

    def inv(self, a):
        return (self.G.inv(a[0]), self.H.inv(a[1]))

    def _find_gens(self):
        return [(g, self.H.one) for g in self.G.gens] + [(self.G.one, h) for h in self.H.gens]

    def __contains__(self, x):
        return isinstance(x, tuple) and len(x) == 2 and x[0] in self.G and x[1] in self.H


class SubGroup(FinGroup):
    """A subgroup of ``parent`` given by its element list (in parent order)."""

    def __init__(self, parent: FinGroup, elements: Sequence[Any], name: str, key):
        super().__init__()
        self.parent = parent
        self.elements = tuple(elements)
        self.one = parent.one
        self.name = name
        self.key = key

    def mul(self, a, b):
        return self.parent.mul(a, b)

    def inv(self, a):
        return self.parent.inv(a)


class QuotientGroup(FinGroup):
    """``G / N`` with each coset named by its first element in ``G``'s order."""

    def __init__(self, G: FinGroup, N: Iterable[Any], name: Optional[str] = None):
        super().__init__()
        N = list(N)
        self.G = G
        self.normal = frozenset(N)
        rep: Dict[Any, Any] = {}
        reps = []
        for g in G.elements:
            if g in rep:
                continue
            reps.append(g)
            for n in N:
                rep[G.mul(g, n)] = g
        self.rep = rep
        self.elements = tuple(reps)
        self.one = G.one
        self.name = name or f"{G.name}/N"
        self.key = ("quot", G.key, tuple(sorted(G.index(n) for n in N)))

    def mul(self, a, b):
        return self.rep[self.G.mul(a, b)]

    def inv(self, a):
        return self.rep[self.G.inv(a)]

    def _find_gens(self):
        out = []
        for g in self.G.gens:
            r = self.rep[g]
            if r != self.one and r not in out:
                out.append(r)
        return out

    def projection(self) -> FinMap:
        return FinMap(self.G, self, self.rep.__getitem__)


def generated_subgroup(G: FinGroup, gens: Sequence[Any]) -> set:
    seen = {G.one}
    queue = deque([G.one])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = G.mul(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def commutator_subgroup(G: FinGroup) -> List[Any]:
    """Normal closure of the commutators of generators, in ``G``'s element order."""
    gens = G.gens
    comm = [G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b))) for a in gens for b in gens]
    comm = [c for c in comm if c != G.one]
    S = generated_subgroup(G, comm)
    while True:
        conj = {G.mul(G.mul(g, s), G.inv(g)) for g in gens for s in list(S)}
        if conj <= S:
            break
        S = generated_subgroup(G, list(S | conj))
    return [s for s in G.elements if s in S]


_AB_CACHE: Dict[Any, QuotientGroup] = {}


def abelianization(G: FinGroup) -> QuotientGroup:
    """``G / [G, G]``, cached per group."""
    if G.key not in _AB_CACHE:
        _AB_CACHE[G.key] = QuotientGroup(G, commutator_subgroup(G), name=f"Ab({G.name})")
    return _AB_CACHE[G.key]


def abelianization_map(f: FinMap) -> FinMap:
    """``Ab(f): Ab(G) -> Ab(H)``."""
    AG, AH = abelianization(f.dom), abelianization(f.cod)
    rep = AH.rep
    return FinMap(AG, AH, lambda x: rep[f(x)])


def is_homomorphism(f: FinMap) -> bool:
    G, H = f.dom, f.cod
    return all(f(G.mul(a, b)) == H.mul(f(a), f(b)) for a in G.elements for b in G.gens)


def group_hom(G: FinGroup, H: FinGroup, mapping, check: bool = True) -> FinMap:
    """A homomorphism from a dict, a callable, or images of ``G.gens``."""
    if callable(mapping):
        f = FinMap(G, H, mapping)
    elif isinstance(mapping, dict) and set(mapping) == set(G.elements):
        f = FinMap(G, H, table=dict(mapping))
    else:
        images = mapping if not isinstance(mapping, dict) else [mapping[g] for g in G.gens]
        f = extend_on_generators(G, H, list(images))
        if f is None:
            raise GroupError("generator images do not extend to a homomorphism")
    if check and not is_homomorphism(f):
        raise GroupError("not a homomorphism")
    return f


def extend_on_generators(G: FinGroup, H: FinGroup, images: Sequence[Any]) -> Optional[FinMap]:
    """The homomorphism with ``G.gens[i] -> images[i]``, or ``None`` if none exists."""
    table = {G.one: H.one}
    queue = deque([G.one])
    pairs = list(zip(G.gens, images))
    while queue:
        x = queue.popleft()
        fx = table[x]
        for g, hg in pairs:
            y = G.mul(x, g)
            fy = H.mul(fx, hg)
            if y in table:
                if table[y] != fy:
                    return None
            else:
                table[y] = fy
                queue.append(y)
    return FinMap(G, H, table=table)


class GroupCategory(FiniteCarrierCategory):
    name = "FinGrp"

    def __init__(self):
        self._homs: Dict[Tuple, List[FinMap]] = {}

    def equal(self, f, g):
        if f.dom != g.dom or f.cod != g.cod:
            return False
        return all(f(x) == g(x) for x in f.dom.gens)

    def pullback(self, f, r):
        A, C = r.dom, f.dom
        P = SubGroup(
            ProductGroup(A, C),
            subset_pullback_elements(f, r),
            name=f"({A.name} x_{r.cod.name} {C.name})",
            key=None,
        )
        P.key = ("pullback", A.key, C.key, P.elements)
        pi0 = FinMap(P, A, lambda t: t[0])
        pi1 = FinMap(P, C, lambda t: t[1])
        return CospanSquare(f, r, P, pi0, pi1, mediate=lambda a, c: FinMap(a.dom, P, lambda q: (a(q), c(q))))

    def homs(self, X, Y):
        key = (X.key, Y.key)
        if key not in self._homs:
            if Y.order ** len(X.gens) > 200_000:
                return None
            out = []
            for imgs in itertools.product(Y.elements, repeat=len(X.gens)):
                f = extend_on_generators(X, Y, imgs)
                if f is not None:
                    out.append(f)
            self._homs[key] = out
        return self._homs[key]

    def classify(self, f):
        X, Y = f.dom, f.cod
        out = MorphismClass()
        back = self.homs(Y, X)
        if back is None:
            return MorphismClass(decided=False)
        for g in back:
            if out.as_section is None and all(g(f(x)) == x for x in X.gens):
                out.as_section = SectionRetractionWitness(section=f, retraction=g)
            if out.as_retraction is None and all(f(g(y)) == y for y in Y.gens):
                out.as_retraction = SectionRetractionWitness(section=g, retraction=f)
            if out.as_section and out.as_retraction:
                break
        return out


FINGRP = GroupCategory()


def group_pullback(f: FinMap, r: FinMap) -> CospanSquare:
    return FINGRP.pullback(f, r)


def cardinality_mul_dimension() -> DimensionFunction:
    return DimensionFunction(NAT_MUL, lambda G: G.order, name="order")


# -- corpus -----------------------------------------------------------------


def cyclic(n: int) -> TableGroup:
    return TableGroup(f"Z/{n}", range(n), lambda a, b: (a + b) % n, 0)


def direct_product(*gs: FinGroup) -> FinGroup:
    """Table group of a product of small groups, with tuple elements."""
    els = list(itertools.product(*[g.elements for g in gs]))
    return TableGroup(
        " x ".join(g.name for g in gs),
        els,
        lambda a, b: tuple(g.mul(x, y) for g, x, y in zip(gs, a, b)),
        tuple(g.one for g in gs),
    )


def semidirect_abelian(name: str, orders: Sequence[int], phi: Callable, m: int) -> TableGroup:
    """``N x| Z/m`` with ``N = prod Z/orders`` and generator acting by ``phi``."""
    N = list(itertools.product(*[range(k) for k in orders]))

    def act(j, v):
        for _ in range(j):
            v = phi(v)
        return v

    def mul(a, b):
        (n1, j1), (n2, j2) = a, b
        w = act(j1, n2)
        return (tuple((x + y) % k for x, y, k in zip(n1, w, orders)), (j1 + j2) % m)

    return TableGroup(name, [(v, j) for v in N for j in range(m)], mul, (tuple(0 for _ in orders), 0))


def metacyclic(name: str, n: int, m: int, r: int, t: int = 0) -> TableGroup:
    """``<a, b | a^n, b^m = a^t, b a b^-1 = a^r>`` on pairs ``a^i b^j``."""

    def mul(x, y):
        (i1, j1), (i2, j2) = x, y
        i = i1 + pow(r, j1, n) * i2
        if j1 + j2 >= m:
            i += t
        return (i % n, (j1 + j2) % m)

    return TableGroup(name, [(i, j) for i in range(n) for j in range(m)], mul, (0, 0))


def dihedral(n: int) -> TableGroup:
    """Dihedral group of order ``2n``."""
    return metacyclic(f"D{n}", n, 2, n - 1)


def quaternion(order: int = 8) -> TableGroup:
    n = order // 2
    return metacyclic("Q8" if order == 8 else f"Q{order}", n, 2, n - 1, n // 2)


def permutation_group(name: str, generators: Sequence[Tuple[int, ...]]) -> TableGroup:
    n = len(generators[0])
    ident = tuple(range(n))

    def compose(a, b):
        return tuple(a[b[i]] for i in range(n))

    els = set([ident])
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in generators:
                y = compose(x, g)
                if y not in els:
                    els.add(y)
                    nxt.append(y)
        frontier = nxt
    return TableGroup(name, sorted(els), compose, ident)


def symmetric3() -> TableGroup:
    return permutation_group("S3", [(1, 0, 2), (1, 2, 0)])


def alternating4() -> TableGroup:
    return permutation_group("A4", [(1, 2, 0, 3), (0, 2, 3, 1)])


def trivial_group() -> TableGroup:
    return TableGroup("1", [0], lambda a, b: 0, 0)


def _rename(G: TableGroup, name: str) -> TableGroup:
    G.name = name
    return G


def groups_up_to(max_order: int = 16) -> List[FinGroup]:
    """One group from every isomorphism class of order ``<= max_order`` (``max_order <= 16``)."""
    if max_order > 16:
        raise GroupError("the built-in corpus stops at order 16")
    Z = cyclic
    out: List[FinGroup] = [trivial_group()]
    for n in range(2, max_order + 1):
        out.append(Z(n))
        if n == 4:
            out.append(_rename(direct_product(Z(2), Z(2)), "Z/2 x Z/2"))
        if n == 6:
            out.append(symmetric3())
        if n == 8:
            out += [
                _rename(direct_product(Z(2), Z(4)), "Z/2 x Z/4"),
                _rename(direct_product(Z(2), Z(2), Z(2)), "Z/2^3"),
                dihedral(4),
                quaternion(8),
            ]
        if n == 9:
            out.append(_rename(direct_product(Z(3), Z(3)), "Z/3 x Z/3"))
        if n in (10, 14):
            out.append(dihedral(n // 2))
        if n == 12:
            out += [
                _rename(direct_product(Z(2), Z(6)), "Z/2 x Z/6"),
                alternating4(),
                dihedral(6),
                metacyclic("Dic3", 6, 2, 5, 3),
            ]
        if n == 16:
            out += [
                _rename(direct_product(Z(4), Z(4)), "Z/4 x Z/4"),
                _rename(direct_product(Z(2), Z(8)), "Z/2 x Z/8"),
                _rename(direct_product(Z(2), Z(2), Z(4)), "Z/2^2 x Z/4"),
                _rename(direct_product(Z(2), Z(2), Z(2), Z(2)), "Z/2^4"),
                dihedral(8),
                quaternion(16),
                metacyclic("SD16", 8, 2, 3),
                metacyclic("M16", 8, 2, 5),
                metacyclic("Z/4 x| Z/4", 4, 4, 3),
                _rename(direct_product(Z(2), dihedral(4)), "Z/2 x D4"),
                _rename(direct_product(Z(2), quaternion(8)), "Z/2 x Q8"),
                semidirect_abelian("(Z/4 x Z/2) x| Z/2", (4, 2), lambda v: (v[0], (v[1] + v[0]) % 2), 2),
                semidirect_abelian("Pauli", (4, 2), lambda v: ((v[0] + 2 * v[1]) % 4, v[1]), 2),
            ]
    return [G for G in out if G.order <= max_order]


def group_signature(G: FinGroup) -> tuple:
    """Isomorphism invariants: order statistics, centre size, abelianization size."""
    orders = tuple(sorted(G.element_order(x) for x in G.elements))
    centre = sum(1 for z in G.elements if all(G.mul(z, g) == G.mul(g, z) for g in G.gens))
    squares = len({G.mul(x, x) for x in G.elements})
    return (G.order, orders, centre, abelianization(G).order, squares)


def group_corpus(max_order: int = 12) -> List[FinGroup]:
    return groups_up_to(max_order)


def sample_group_squares(budget: int, seed: int = 0, max_order: int = 12) -> List[AdmissibleSquare]:
    corpus = [G for G in group_corpus(max_order) if G.order <= max_order]
    return sample_admissible_squares(FINGRP, corpus, budget, seed)


def cardinality_mul_check(budget: int = 100, seed: int = 0, max_order: int = 12) -> ViolationReport:
    squares = sample_group_squares(budget, seed, max_order)
    return run_dimension_harness(FINGRP, cardinality_mul_dimension(), squares, "FinGrp/order")


# -- tangent structure ------------------------------------------------------


def grp_tangent() -> TangentStructureData:
    """``T G = G x Ab(G)``.

    ``p(g, a) = g``, ``0(g) = (g, e)``, ``+`` multiplies the abelian
    coordinates, ``lift(g, a) = ((g, e), [e, a])`` and ``flip`` exchanges the
    two abelian coordinates ``a1`` and ``[h]`` of ``((g, a1), [h, b])``.
    """

    def T_obj(G):
        return ProductGroup(G, abelianization(G))

    def T_mor(f):
        ab = abelianization_map(f)
        return FinMap(T_obj(f.dom), T_obj(f.cod), lambda x: (f(x[0]), ab(x[1])))

    def p(G):
        return FinMap(T_obj(G), G, lambda x: x[0])

    def zero(G):
        e = abelianization(G).one
        return FinMap(G, T_obj(G), lambda g: (g, e))

    def plus(G):
        sq = ts.T2(G)
        A = abelianization(G)
        return FinMap(sq.apex, T_obj(G), lambda x: (x[0][0], A.mul(x[0][1], x[1][1])))

    def lift(G):
        TG = T_obj(G)
        ATG = abelianization(TG)
        e = abelianization(G).one
        return FinMap(TG, T_obj(TG), lambda x: ((x[0], e), ATG.rep[(G.one, x[1])]))

    def flip(G):
        TG = T_obj(G)
        TTG = T_obj(TG)
        A = abelianization(G)
        ATG = abelianization(TG)

        def fl(x):
            (g, a1), (h, b) = x
            return ((g, A.rep[h]), ATG.rep[(a1, b)])

        return FinMap(TTG, TTG, fl)

    ts = TangentStructureData("grp-ab", FINGRP, T_obj, T_mor, p, zero, plus, lift, flip)
    return ts


def grp_diffbun(M: FinGroup, A: FinGroup, ts: Optional[TangentStructureData] = None) -> DifferentialBundleData:
    """The projection ``M x A -> M`` for an abelian ``A``.

    ``lam(m, a) = ((m, e), [e, a])`` puts the fibre coordinate in the
    tangent direction.
    """
    if not A.is_abelian():
        raise GroupError("fibre group must be abelian")
    E = ProductGroup(M, A)
    q = FinMap(E, M, lambda x: x[0])
    zeta = FinMap(M, E, lambda m: (m, A.one))
    sq = FINGRP.pullback(q, q)
    sigma = FinMap(sq.apex, E, lambda x: (x[0][0], A.mul(x[0][1], x[1][1])))
    AE = abelianization(E)
    lam = FinMap(E, ProductGroup(E, AE), lambda x: ((x[0], A.one), AE.rep[(M.one, x[1])]))
    return DifferentialBundleData(E, M, q, zeta, sigma, lam, sq)


def diffbun_ratio_check(M: FinGroup, A: FinGroup) -> Dict[str, int]:
    """``#Ab(E) #M`` against ``#Ab(M) #E`` for ``E = M x A``."""
    E = ProductGroup(M, A)
    lhs = abelianization(E).order * M.order
    rhs = abelianization(M).order * E.order
    return {"lhs": lhs, "rhs": rhs, "holds": lhs == rhs}


def grp_tangent_corpus() -> List[FinGroup]:
    """Groups on which the structure is checked to depth two."""
    return [trivial_group(), cyclic(2), symmetric3()]


def grp_tangent_extended_corpus() -> List[FinGroup]:
    """Groups checked to depth one (their iterated bundles are too large for depth two)."""
    return [cyclic(3), cyclic(4)]


def grp_morphisms() -> List[FinMap]:
    S3, Z2, Z3, Z4, one = symmetric3(), cyclic(2), cyclic(3), cyclic(4), trivial_group()
    sign = group_hom(S3, Z2, lambda p: 0 if _even(p) else 1)
    transposition = group_hom(Z2, S3, {0: S3.one, 1: (1, 0, 2)})
    rotation = group_hom(Z3, S3, {0: S3.one, 1: (1, 2, 0), 2: (2, 0, 1)})
    mod2 = group_hom(Z4, Z2, lambda a: a % 2)
    return [
        sign,
        transposition,
        rotation,
        mod2,
        group_hom(Z2, Z4, {0: 0, 1: 2}),
        group_hom(one, S3, {0: S3.one}),
        group_hom(S3, one, lambda p: 0),
    ]


def _even(p) -> bool:
    inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return inv % 2 == 0
