"""Finite rings, possibly without unit, and the characteristic.

Three categories share one object representation: ``Ring_n`` (all rings,
all homomorphisms), ``Ring_1`` (unital rings, all homomorphisms) and
``Ring_u`` (unital rings, unit-preserving homomorphisms).  Homomorphisms are
found by extending additive generator images and are checked to be
multiplicative on generator pairs, which suffices by biadditivity.
"""

from __future__ import annotations

import itertools
import math
from typing import Any, Callable, Dict, List, Optional, Sequence

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
from .fingrp import FinGroup, extend_on_generators
from .monoid import LCM
from .report import ViolationReport
from .tangent import TangentStructureData

VARIANTS = ("Ring_n", "Ring_1", "Ring_u")


class RingError(ValueError):
    pass


class FinRing:
    """Common interface: ``elements`` (zero first), ``add``, ``neg``, ``mul``, ``zero``, ``one``."""

    name = "R"
    key: Any = None
    one: Any = None

    def __init__(self):
        self._add_gens = None
        self._hash = None
        self._index = None

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def unital(self) -> bool:
        return self.one is not None

    def __contains__(self, x):
        if self._index is None:
            self._index = {e: i for i, e in enumerate(self.elements)}
        return x in self._index

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def times(self, k: int, x):
        out = self.zero
        for _ in range(k):
            out = self.add(out, x)
        return out

    def additive_order(self, x) -> int:
        k, y = 1, x
        while y != self.zero:
            y = self.add(y, x)
            k += 1
        return k

    @property
    def add_gens(self) -> List[Any]:
        if self._add_gens is None:
            gens: List[Any] = []
            span = {self.zero}
            for x in self.elements:
                if x not in span:
                    gens.append(x)
                    span = _additive_span(self, gens)
            self._add_gens = gens
        return self._add_gens

    def additive_group(self) -> "AdditiveGroup":
        return AdditiveGroup(self)

    def is_commutative(self) -> bool:
        g = self.add_gens
        return all(self.mul(a, b) == self.mul(b, a) for a in g for b in g)

    def __eq__(self, other):
        return self is other or (isinstance(other, FinRing) and self.key == other.key)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key)
        return self._hash

    def __repr__(self):
        return self.name


def _additive_span(R: FinRing, gens) -> set:
    seen = {R.zero}
    frontier = [R.zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = R.add(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


class AdditiveGroup(FinGroup):
    """The additive group of a ring, viewed as a :class:`FinGroup`."""

    def __init__(self, R: FinRing):
        super().__init__()
        self.R = R
        self.elements = R.elements
        self.one = R.zero
        self.name = f"({R.name}, +)"
        self.key = ("additive", R.key)
        self._gens = list(R.add_gens)

    def mul(self, a, b):
        return self.R.add(a, b)

    def inv(self, a):
        return self.R.neg(a)


class TableRing(FinRing):
    """A ring from explicit operations, validated exhaustively."""

    def __init__(
        self,
        name: str,
        elements: Sequence[Any],
        add: Callable,
        mul: Callable,
        zero,
        one=None,
        validate: bool = True,
    ):
        super().__init__()
        els = list(elements)
        els.remove(zero)
        els.insert(0, zero)
        self.elements = tuple(els)
        self.zero, self.one, self.name = zero, one, name
        self._add, self._mul = add, mul
        self._neg = {}
        for a in self.elements:
            for b in self.elements:
                if add(a, b) == zero:
                    self._neg[a] = b
                    break
        idx = {e: i for i, e in enumerate(self.elements)}
        self._index = idx
        if validate:
            self._validate()
        self.key = (
            "ring",
            name,
            self.elements,
            tuple(idx[add(a, b)] for a in self.elements for b in self.elements),
            tuple(idx[mul(a, b)] for a in self.elements for b in self.elements),
            one,
        )

    def _validate(self):
        E, add, mul, z = self.elements, self._add, self._mul, self.zero
        for a in E:
            if a not in self._neg:
                raise RingError(f"{a!r} has no additive inverse")
            if add(a, z) != a:
                raise RingError("zero is not additive identity")
            for b in E:
                s, p = add(a, b), mul(a, b)
                if s not in self or p not in self:
                    raise RingError("operations leave the carrier")
                if s != add(b, a):
                    raise RingError("addition is not commutative")
        for a, b, c in itertools.product(E, repeat=3):
            if add(add(a, b), c) != add(a, add(b, c)):
                raise RingError("addition is not associative")
            if mul(mul(a, b), c) != mul(a, mul(b, c)):
                raise RingError("multiplication is not associative")
            if mul(a, add(b, c)) != add(mul(a, b), mul(a, c)):
                raise RingError("left distributivity fails")
            if mul(add(a, b), c) != add(mul(a, c), mul(b, c)):
                raise RingError("right distributivity fails")
        if self.one is not None:
            if self.one not in self:
                raise RingError("unit is not an element")
            if any(mul(self.one, a) != a or mul(a, self.one) != a for a in E):
                raise RingError("unit law fails")

    def add(self, a, b):
        return self._add(a, b)

    def neg(self, a):
        return self._neg[a]

    def mul(self, a, b):
        return self._mul(a, b)

    def to_json(self) -> Dict:
        E = self.elements
        out = {
            "add": {"elements": list(E), "table": [[self.add(a, b) for b in E] for a in E], "id": self.zero},
            "mul": [[self.mul(a, b) for b in E] for a in E],
        }
        if self.one is not None:
            out["one"] = self.one
        return out


def ring_from_json(d: Dict, name: str = "R") -> TableRing:
    """``{"add": {"elements", "table", "id"}, "mul": [[...]], "one": optional}``."""

    def h(x):
        return tuple(h(v) for v in x) if isinstance(x, list) else x

    add = d["add"]
    els = [h(e) for e in add["elements"]]
    idx = {e: i for i, e in enumerate(els)}
    at = [[h(e) for e in row] for row in add["table"]]
    mt = [[h(e) for e in row] for row in d["mul"]]
    n = len(els)
    if len(at) != n or len(mt) != n or any(len(r) != n for r in at + mt):
        raise RingError("tables must be square over the element list")
    one = h(d["one"]) if d.get("one") is not None else None
    return TableRing(
        name, els, lambda a, b: at[idx[a]][idx[b]], lambda a, b: mt[idx[a]][idx[b]], h(add.get("id", els[0])), one
    )


class ProductRing(FinRing):
    def __init__(self, R: FinRing, S: FinRing, name: Optional[str] = None):
        super().__init__()
        self.R, self.S = R, S
        self.zero = (R.zero, S.zero)
        self.one = (R.one, S.one) if R.unital and S.unital else None
        self.name = name or f"{R.name} x {S.name}"
        self.key = ("prod", R.key, S.key)
        self._elements = None

    @property
    def elements(self):
        if self._elements is None:
            self._elements = tuple(itertools.product(self.R.elements, self.S.elements))
        return self._elements

    def add(self, a, b):
        return (self.R.add(a[0], b[0]), self.S.add(a[1], b[1]))

    def neg(self, a):
        return (self.R.neg(a[0]), self.S.neg(a[1]))

    def mul(self, a, b):
        return (self.R.mul(a[0], b[0]), self.S.mul(a[1], b[1]))

    @property
    def add_gens(self):
        if self._add_gens is None:
            self._add_gens = [(g, self.S.zero) for g in self.R.add_gens] + [(self.R.zero, g) for g in self.S.add_gens]
        return self._add_gens


class DualRing(FinRing):
    """``R[x]/(x^2)`` on pairs ``(a, b) = a + b x``."""

    def __init__(self, R: FinRing):
        super().__init__()
        self.R = R
        self.zero = (R.zero, R.zero)
        self.one = (R.one, R.zero) if R.unital else None
        self.name = f"{R.name}[x]/x^2" if not isinstance(R, DualRing) else f"T({R.name})"
        self.key = ("dual", R.key)
        self._elements = None

    @property
    def elements(self):
        if self._elements is None:
            self._elements = tuple(itertools.product(self.R.elements, self.R.elements))
        return self._elements

    def add(self, a, b):
        return (self.R.add(a[0], b[0]), self.R.add(a[1], b[1]))

    def neg(self, a):
        return (self.R.neg(a[0]), self.R.neg(a[1]))

    def mul(self, u, v):
        R = self.R
        (a, b), (c, d) = u, v
        return (R.mul(a, c), R.add(R.mul(a, d), R.mul(b, c)))

    @property
    def add_gens(self):
        if self._add_gens is None:
            z = self.R.zero
            self._add_gens = [(g, z) for g in self.R.add_gens] + [(z, g) for g in self.R.add_gens]
        return self._add_gens


class SubRing(FinRing):
    """A subring of ``parent`` listed by elements; the unit is searched for."""

    def __init__(self, parent: FinRing, elements: Sequence[Any], name: str, key):
        super().__init__()
        self.parent = parent
        self.elements = tuple(elements)
        self.zero = parent.zero
        self.name = name
        self.key = key
        self.one = parent.one if parent.unital and parent.one in self else None

    def add(self, a, b):
        return self.parent.add(a, b)

    def neg(self, a):
        return self.parent.neg(a)

    def mul(self, a, b):
        return self.parent.mul(a, b)


def find_unit(R: FinRing):
    """A two-sided multiplicative identity of ``R``, or ``None``."""
    if R.one is not None:
        return R.one
    gens = R.add_gens
    for e in R.elements:
        if all(R.mul(e, g) == g and R.mul(g, e) == g for g in gens):
            return e
    return None


# -- constructors -----------------------------------------------------------


def zmod(n: int) -> TableRing:
    return TableRing(f"Z/{n}", range(n), lambda a, b: (a + b) % n, lambda a, b: (a * b) % n, 0, 1 % n if n > 1 else 0)


def zero_ring() -> TableRing:
    return TableRing("0", [0], lambda a, b: 0, lambda a, b: 0, 0, 0)


def product_ring(*rs: FinRing) -> TableRing:
    """Table product of small rings (tuples, one coordinate per factor)."""
    els = list(itertools.product(*[r.elements for r in rs]))
    unital = all(r.unital for r in rs)
    return TableRing(
        " x ".join(r.name for r in rs),
        els,
        lambda a, b: tuple(r.add(x, y) for r, x, y in zip(rs, a, b)),
        lambda a, b: tuple(r.mul(x, y) for r, x, y in zip(rs, a, b)),
        tuple(r.zero for r in rs),
        tuple(r.one for r in rs) if unital else None,
    )


def dual_numbers(R: FinRing) -> DualRing:
    return DualRing(R)


def even_subring(modulus: int = 8) -> TableRing:
    """``2Z/nZ`` as a ring without unit."""
    n = modulus
    return TableRing(
        f"2Z/{n}Z", range(0, n, 2), lambda a, b: (a + b) % n, lambda a, b: (a * b) % n, 0, None
    )


def null_ring(n: int) -> TableRing:
    """``Z/n`` with zero multiplication."""
    return TableRing(f"Z/{n}^0", range(n), lambda a, b: (a + b) % n, lambda a, b: 0, 0, None)


def field4() -> TableRing:
    # elements a + b w with w^2 = w + 1
    def mul(u, v):
        a, b = u
        c, d = v
        return ((a * c + b * d) % 2, (a * d + b * c + b * d) % 2)

    return TableRing(
        "F4",
        list(itertools.product(range(2), repeat=2)),
        lambda u, v: ((u[0] + v[0]) % 2, (u[1] + v[1]) % 2),
        mul,
        (0, 0),
        (1, 0),
    )


# -- characteristic ---------------------------------------------------------


def characteristic(R: FinRing) -> int:
    """Least ``n >= 1`` with ``n x = 0`` for all ``x``: the lcm of additive orders of generators."""
    out = 1
    for g in R.add_gens:
        out = math.lcm(out, R.additive_order(g))
    return out


def maximal_order_element(R: FinRing):
    """An element whose additive order equals the characteristic."""
    n = characteristic(R)
    x = R.zero
    for g in R.add_gens:
        x = R.add(x, g)
    if R.additive_order(x) == n:
        return x
    for y in R.elements:
        if R.additive_order(y) == n:
            return y
    raise AssertionError("unreachable for finite rings")


def char_dimension(variant: str = "Ring_n") -> DimensionFunction:
    if variant not in VARIANTS:
        raise RingError(f"unknown variant {variant!r}")
    return DimensionFunction(LCM, characteristic, name=f"char[{variant}]")


# -- categories -------------------------------------------------------------


def is_ring_hom(f: FinMap, unital: bool = False) -> bool:
    R, S = f.dom, f.cod
    gens = R.add_gens
    if f(R.zero) != S.zero:
        return False
    if any(f(R.add(a, b)) != S.add(f(a), f(b)) for a in R.elements for b in gens):
        return False
    if any(f(R.mul(a, b)) != S.mul(f(a), f(b)) for a in gens for b in gens):
        return False
    return not unital or f(R.one) == S.one


def ring_hom(R: FinRing, S: FinRing, mapping, unital: bool = False) -> FinMap:
    f = FinMap(R, S, mapping) if callable(mapping) else FinMap(R, S, table=dict(mapping))
    if not is_ring_hom(f, unital):
        raise RingError("not a ring homomorphism" + (" preserving the unit" if unital else ""))
    return f


class RingCategory(FiniteCarrierCategory):
    def __init__(self, variant: str = "Ring_n"):
        if variant not in VARIANTS:
            raise RingError(f"unknown variant {variant!r}")
        self.variant = variant
        self.name = variant
        self._homs: Dict[tuple, List[FinMap]] = {}

    @property
    def unital_objects(self) -> bool:
        return self.variant != "Ring_n"

    @property
    def unit_preserving(self) -> bool:
        return self.variant == "Ring_u"

    def admits(self, R: FinRing) -> bool:
        return R.unital or not self.unital_objects

    def equal(self, f, g):
        if f.dom != g.dom or f.cod != g.cod:
            return False
        return all(f(x) == g(x) for x in f.dom.add_gens)

    def pullback(self, f, r):
        A, C = r.dom, f.dom
        parent = ProductRing(A, C)
        els = subset_pullback_elements(f, r)
        P = SubRing(parent, els, name=f"({A.name} x_{r.cod.name} {C.name})", key=("pullback", A.key, C.key, tuple(els)))
        if self.unital_objects and not P.unital:
            # the set pullback has no unit, so it is not an object here
            return None
        pi0 = FinMap(P, A, lambda t: t[0])
        pi1 = FinMap(P, C, lambda t: t[1])
        return CospanSquare(f, r, P, pi0, pi1, mediate=lambda a, c: FinMap(a.dom, P, lambda q: (a(q), c(q))))

    def homs(self, X, Y):
        key = (X.key, Y.key)
        if key in self._homs:
            return self._homs[key]
        if not (self.admits(X) and self.admits(Y)):
            return []
        gens = X.add_gens
        if Y.order ** len(gens) > 200_000:
            return None
        GX, GY = AdditiveGroup(X), AdditiveGroup(Y)
        out = []
        for imgs in itertools.product(Y.elements, repeat=len(gens)):
            h = extend_on_generators(GX, GY, imgs)
            if h is None:
                continue
            f = FinMap(X, Y, table=h.table)
            if any(f(X.mul(a, b)) != Y.mul(f(a), f(b)) for a in gens for b in gens):
                continue
            if self.unit_preserving and f(X.one) != Y.one:
                continue
            out.append(f)
        self._homs[key] = out
        return out

    def classify(self, f):
        X, Y = f.dom, f.cod
        back = self.homs(Y, X)
        if back is None:
            return MorphismClass(decided=False)
        out = MorphismClass()
        for g in back:
            if out.as_section is None and all(g(f(x)) == x for x in X.add_gens):
                out.as_section = SectionRetractionWitness(section=f, retraction=g)
            if out.as_retraction is None and all(f(g(y)) == y for y in Y.add_gens):
                out.as_retraction = SectionRetractionWitness(section=g, retraction=f)
        return out


RING_N = RingCategory("Ring_n")
RING_1 = RingCategory("Ring_1")
RING_U = RingCategory("Ring_u")
RING_CATEGORIES = {"Ring_n": RING_N, "Ring_1": RING_1, "Ring_u": RING_U}


def ring_corpus(max_order: int = 16) -> List[FinRing]:
    """Z/n, small products, dual numbers, F4 and a few rings without unit."""
    Z = zmod
    out: List[FinRing] = [zero_ring()] + [Z(n) for n in range(2, 17)]
    out += [
        product_ring(Z(2), Z(2)),
        product_ring(Z(2), Z(4)),
        product_ring(Z(2), Z(3)),
        product_ring(Z(2), Z(2), Z(2)),
        product_ring(Z(3), Z(3)),
        product_ring(Z(4), Z(4)),
        DualRing(Z(2)),
        DualRing(Z(3)),
        DualRing(Z(4)),
        field4(),
        even_subring(8),
        null_ring(2),
        null_ring(4),
        product_ring(Z(2), even_subring(8)),
    ]
    return [R for R in out if R.order <= max_order]


def sampling_corpus(variant: str) -> List[FinRing]:
    """A small corpus for square sampling (hom enumeration is quadratic in pairs)."""
    Z = zmod
    rings: List[FinRing] = [
        zero_ring(),
        Z(2),
        Z(3),
        Z(4),
        Z(6),
        Z(12),
        product_ring(Z(2), Z(2)),
        product_ring(Z(2), Z(4)),
        DualRing(Z(2)),
        field4(),
        even_subring(8),
        null_ring(2),
    ]
    cat = RING_CATEGORIES[variant]
    return [R for R in rings if cat.admits(R)]


def sample_ring_squares(variant: str, budget: int, seed: int = 0) -> List[AdmissibleSquare]:
    """Exactly ``budget`` squares when possible; draws skipped for lack of a unit are re-drawn."""
    cat = RING_CATEGORIES[variant]
    corpus = sampling_corpus(variant)
    out: List[AdmissibleSquare] = []
    attempt = 0
    while len(out) < budget and attempt < 20:
        out += sample_admissible_squares(cat, corpus, budget - len(out), seed * 1000 + attempt)
        attempt += 1
    return out[:budget]


def char_dimension_check(variant: str = "Ring_n", budget: int = 100, seed: int = 0) -> ViolationReport:
    squares = sample_ring_squares(variant, budget, seed)
    return run_dimension_harness(RING_CATEGORIES[variant], char_dimension(variant), squares, f"{variant}/char")


def char_section_retraction_check(s: FinMap, r: FinMap) -> ViolationReport:
    """``char(A)`` divides ``char(B)`` for a section ``s: A -> B`` with retraction ``r``."""
    A, B = s.dom, s.cod
    if r.dom != B or r.cod != A or not all(r(s(a)) == a for a in A.elements):
        raise RingError("r o s is not the identity")
    rep = ViolationReport("char-section-retraction")
    ca, cb = characteristic(A), characteristic(B)
    rep.record("char-divides", cb % ca == 0, {"A": A.name, "B": B.name}, ca, cb)
    return rep


def all_section_retraction_pairs(cat: RingCategory, corpus: Sequence[FinRing]):
    """Every (section, retraction) pair between corpus rings, found by enumeration."""
    out = []
    for A in corpus:
        for B in corpus:
            homs_ab = cat.homs(A, B) or []
            homs_ba = cat.homs(B, A) or []
            for s in homs_ab:
                for r in homs_ba:
                    if all(r(s(a)) == a for a in A.add_gens):
                        out.append((s, r))
    return out


# -- dual numbers -----------------------------------------------------------


def dual_numbers_tangent() -> TangentStructureData:
    """``T R = R[x]/(x^2)`` on commutative unital rings.

    With ``T^2 R = R[x, y]/(x^2, y^2)`` stored as ``((a, b), (c, d)) = a + b x + c y + d x y``:
    ``lift(a, b) = ((a, 0), (0, b))`` and ``flip`` exchanges ``b`` and ``c``.
    """

    def T_obj(R):
        return DualRing(R)

    def T_mor(f):
        return FinMap(DualRing(f.dom), DualRing(f.cod), lambda u: (f(u[0]), f(u[1])))

    def p(R):
        return FinMap(DualRing(R), R, lambda u: u[0])

    def zero(R):
        z = R.zero
        return FinMap(R, DualRing(R), lambda a: (a, z))

    def plus(R):
        sq = ts.T2(R)
        return FinMap(sq.apex, DualRing(R), lambda t: (t[0][0], R.add(t[0][1], t[1][1])))

    def lift(R):
        z = R.zero
        return FinMap(DualRing(R), DualRing(DualRing(R)), lambda u: ((u[0], z), (z, u[1])))

    def flip(R):
        TT = DualRing(DualRing(R))
        return FinMap(TT, TT, lambda w: ((w[0][0], w[1][0]), (w[0][1], w[1][1])))

    ts = TangentStructureData("ring-dual", RING_U, T_obj, T_mor, p, zero, plus, lift, flip)
    return ts


def ring_tangent_corpus() -> List[FinRing]:
    """Rings checked to depth two."""
    return [zero_ring(), zmod(2)]


def ring_tangent_extended_corpus() -> List[FinRing]:
    """Rings checked to depth one."""
    return [zmod(3), zmod(4), product_ring(zmod(2), zmod(2))]


def ring_morphisms() -> List[FinMap]:
    Z2, Z4, Z0 = zmod(2), zmod(4), zero_ring()
    Z22 = product_ring(Z2, Z2)
    return [
        ring_hom(Z4, Z2, lambda a: a % 2, unital=True),
        ring_hom(Z22, Z2, lambda t: t[0], unital=True),
        ring_hom(Z2, Z22, lambda a: (a, a), unital=True),
        ring_hom(Z2, Z0, lambda a: 0, unital=True),
        ring_hom(Z4, Z0, lambda a: 0, unital=True),
    ]


def dual_char_check(corpus: Optional[Sequence[FinRing]] = None) -> ViolationReport:
    """``char(T R) = char(R)`` and ``char(T^2 R) = char(T R)`` for the dual numbers."""
    rep = ViolationReport("ring-dual-characteristic")
    for R in corpus if corpus is not None else ring_corpus():
        c0, c1, c2 = characteristic(R), characteristic(DualRing(R)), characteristic(DualRing(DualRing(R)))
        rep.record("char-T-equals-char", c1 == c0, {"R": R.name}, c1, c0)
        rep.record("char-T2-equals-char-T", c2 == c1, {"R": R.name}, c2, c1)
        rep.record("lcm-char-T2-char", math.lcm(c2, c0) == c1, {"R": R.name}, math.lcm(c2, c0), c1)
    return rep
