"""Concrete categories, pullback squares, and dimension functions.

A category here is an object implementing :class:`Category`.  Morphisms are
whatever the category says they are; most finite categories use
:class:`FinMap`.  A pullback square is a :class:`CospanSquare` ``(f, r, P,
pi0, pi1)`` with ``f: C -> B``, ``r: A -> B``, ``pi0: P -> A`` and
``pi1: P -> C``.  Dimension equations are checked only on squares that come
with explicit section/retraction witnesses.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence

from .monoid import MonoidSpec, combine
from .report import FAIL, NA, PASS, CheckRecord, ViolationReport


class UndecidableError(RuntimeError):
    """Neither a pullback solver nor hom enumeration is available."""


class NotACone(ValueError):
    """A pair of morphisms does not commute over the cospan."""


class Category:
    """Interface for a concrete category.

    Subclasses override what they support.  ``pullback`` returns a
    :class:`CospanSquare` whose ``mediate`` builds the unique comparison
    morphism, or ``None`` when no pullback exists in the category.
    """

    name = "category"

    def identity(self, X):
        raise NotImplementedError

    def compose(self, g, f):
        """``g`` after ``f``."""
        raise NotImplementedError

    def dom(self, f):
        raise NotImplementedError

    def cod(self, f):
        raise NotImplementedError

    def equal(self, f, g) -> bool:
        raise NotImplementedError

    def pullback(self, f, r) -> Optional["CospanSquare"]:
        raise UndecidableError(f"{self.name} has no pullback solver")

    def pushout(self, f, s) -> Optional["PushoutSquare"]:
        raise UndecidableError(f"{self.name} has no pushout solver")

    def homs(self, X, Y) -> Optional[List[Any]]:
        """All morphisms ``X -> Y`` or ``None`` if not enumerable."""
        return None

    def inverse(self, f):
        """The inverse of ``f`` or ``None`` if ``f`` is not an isomorphism."""
        return None

    def describe(self, x) -> str:
        return repr(x)

    def classify(self, f) -> "MorphismClass":
        """Witnessed section/retraction classification; hom search by default."""
        return classify_morphism(self, f)

    def compose_all(self, *fs):
        """``compose_all(h, g, f) == h o g o f``."""
        out = fs[-1]
        for g in reversed(fs[:-1]):
            out = self.compose(g, out)
        return out


# -- finite carriers --------------------------------------------------------


class FinMap:
    """A function between finite carriers, evaluated lazily and cached.

    ``dom`` and ``cod`` are objects with an ``elements`` sequence.
    """

    __slots__ = ("dom", "cod", "_fn", "_table", "label")

    def __init__(self, dom, cod, fn: Optional[Callable] = None, table: Optional[Dict] = None, label=None):
        if fn is None and table is None:
            raise ValueError("FinMap needs fn or table")
        self.dom = dom
        self.cod = cod
        self._fn = fn
        self._table = table
        self.label = label

    def __call__(self, x):
        if self._table is not None:
            return self._table[x]
        return self._fn(x)

    @property
    def table(self) -> Dict:
        if self._table is None:
            fn = self._fn
            self._table = {x: fn(x) for x in self.dom.elements}
        return self._table

    def images(self) -> tuple:
        return tuple(self(x) for x in self.dom.elements)

    def then(self, g: "FinMap") -> "FinMap":
        f = self
        return FinMap(f.dom, g.cod, lambda x: g(f(x)))

    def is_injective(self) -> bool:
        im = self.images()
        return len(set(im)) == len(im)

    def is_surjective(self) -> bool:
        return set(self.images()) >= set(self.cod.elements)

    def __repr__(self):
        if self.label:
            return self.label
        if len(self.dom.elements) <= 16:
            return "{" + ", ".join(f"{x!r}->{self(x)!r}" for x in self.dom.elements) + "}"
        return f"FinMap({len(self.dom.elements)} -> {len(self.cod.elements)})"


def finmap_equal(f: FinMap, g: FinMap) -> bool:
    if f.dom != g.dom or f.cod != g.cod:
        return False
    return all(f(x) == g(x) for x in f.dom.elements)


def finmap_inverse_table(f: FinMap) -> Optional[Dict]:
    if len(f.dom.elements) != len(f.cod.elements):
        return None
    inv = {}
    for x in f.dom.elements:
        y = f(x)
        if y in inv:
            return None
        inv[y] = x
    if len(inv) != len(f.cod.elements):
        return None
    return inv


class FiniteCarrierCategory(Category):
    """Shared plumbing for categories whose morphisms are :class:`FinMap`."""

    def identity(self, X):
        return FinMap(X, X, lambda x: x, label="id")

    def compose(self, g, f):
        if f.cod != g.dom:
            raise ValueError(f"cannot compose: cod {f.cod!r} != dom {g.dom!r}")
        return f.then(g)

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def equal(self, f, g):
        return finmap_equal(f, g)

    def is_morphism(self, f) -> bool:
        return True

    def inverse(self, f):
        inv = finmap_inverse_table(f)
        if inv is None:
            return None
        g = FinMap(f.cod, f.dom, table=inv)
        return g if self.is_morphism(g) else None


def subset_pullback_elements(f: FinMap, r: FinMap) -> list:
    """Pairs ``(a, c)`` with ``r(a) == f(c)``, in lexicographic element order."""
    by_image: Dict[Any, list] = {}
    for c in f.dom.elements:
        by_image.setdefault(f(c), []).append(c)
    out = []
    for a in r.dom.elements:
        for c in by_image.get(r(a), ()):
            out.append((a, c))
    return out


# -- squares ----------------------------------------------------------------


@dataclass
class CospanSquare:
    """A commuting square ``r o pi0 == f o pi1`` over the cospan ``C -f-> B <-r- A``."""

    f: Any
    r: Any
    apex: Any
    pi0: Any
    pi1: Any
    mediate: Optional[Callable[[Any, Any], Any]] = None


@dataclass
class PushoutSquare:
    """A commuting square ``i0 o s == i1 o f`` under the span ``C <-f- B -s-> A``."""

    f: Any
    s: Any
    apex: Any
    i0: Any
    i1: Any
    copair: Optional[Callable[[Any, Any], Any]] = None
    flags: List[str] = field(default_factory=list)


@dataclass
class SectionRetractionWitness:
    section: Any
    retraction: Any

    def verify(self, cat: Category) -> bool:
        r, s = self.retraction, self.section
        return cat.equal(cat.compose(r, s), cat.identity(cat.dom(s)))


@dataclass
class MorphismClass:
    """Witnessed classification of a morphism.

    ``as_section`` certifies the morphism is a section (it holds the
    morphism and a retraction of it); ``as_retraction`` likewise.
    ``decided`` is false when the category could not enumerate homs.
    """

    as_section: Optional[SectionRetractionWitness] = None
    as_retraction: Optional[SectionRetractionWitness] = None
    decided: bool = True

    @property
    def is_section(self):
        return self.as_section is not None

    @property
    def is_retraction(self):
        return self.as_retraction is not None

    @property
    def kind(self) -> str:
        if self.is_section and self.is_retraction:
            return "iso"
        if self.is_section:
            return "section"
        if self.is_retraction:
            return "retraction"
        return "neither" if self.decided else "unknown"


def classify_morphism(cat: Category, f) -> MorphismClass:
    """Decide whether ``f`` is a section and/or a retraction by hom search."""
    X, Y = cat.dom(f), cat.cod(f)
    back = cat.homs(Y, X)
    if back is None:
        return MorphismClass(decided=False)
    out = MorphismClass()
    idX, idY = cat.identity(X), cat.identity(Y)
    for g in back:
        if out.as_section is None and cat.equal(cat.compose(g, f), idX):
            out.as_section = SectionRetractionWitness(section=f, retraction=g)
        if out.as_retraction is None and cat.equal(cat.compose(f, g), idY):
            out.as_retraction = SectionRetractionWitness(section=g, retraction=f)
        if out.as_section and out.as_retraction:
            break
    return out


def check_cone(cat: Category, square: CospanSquare, a, c):
    if not cat.equal(cat.compose(square.r, a), cat.compose(square.f, c)):
        raise NotACone("cone legs do not commute over the cospan")


def mediate(cat: Category, square: CospanSquare, a, c):
    """The unique ``u`` with ``pi0 o u == a`` and ``pi1 o u == c``.

    Works for any pullback square: when the square carries no mediator the
    canonical pullback is used and the comparison is inverted.
    """
    check_cone(cat, square, a, c)
    if square.mediate is not None:
        return square.mediate(a, c)
    canon = cat.pullback(square.f, square.r)
    if canon is None:
        raise UndecidableError("no canonical pullback to mediate through")
    phi = canon.mediate(square.pi0, square.pi1)
    psi = cat.inverse(phi)
    if psi is None:
        raise NotACone("square is not a pullback; comparison is not invertible")
    return cat.compose(psi, canon.mediate(a, c))


def square_commutes(cat: Category, square: CospanSquare) -> bool:
    return cat.equal(cat.compose(square.r, square.pi0), cat.compose(square.f, square.pi1))


def is_pullback(cat: Category, square: CospanSquare, probes: Optional[Sequence[Any]] = None) -> bool:
    """Decide whether ``square`` is a pullback.

    The primary route compares against the category's own pullback and asks
    whether the comparison is invertible.  Without a solver, the universal
    property is checked by enumerating cones from ``probes``.

    Raises:
        UndecidableError: if neither route is available.
    """
    if not square_commutes(cat, square):
        return False
    try:
        canon = cat.pullback(square.f, square.r)
    except UndecidableError:
        canon = None
        if probes is None:
            raise
    if canon is not None:
        phi = canon.mediate(square.pi0, square.pi1)
        return cat.inverse(phi) is not None
    if probes is None:
        # the solver says no pullback exists, so this square is not one
        return False
    return is_pullback_by_enumeration(cat, square, probes)


def is_pullback_by_enumeration(cat: Category, square: CospanSquare, probes: Sequence[Any]) -> bool:
    """Check the universal property against every cone from every probe object."""
    if not square_commutes(cat, square):
        return False
    A, C, P = cat.dom(square.r), cat.dom(square.f), square.apex
    for Q in probes:
        hQA, hQC, hQP = cat.homs(Q, A), cat.homs(Q, C), cat.homs(Q, P)
        if hQA is None or hQC is None or hQP is None:
            raise UndecidableError(f"cannot enumerate homs out of {Q!r}")
        for a in hQA:
            ra = cat.compose(square.r, a)
            for c in hQC:
                if not cat.equal(ra, cat.compose(square.f, c)):
                    continue
                n = sum(
                    1
                    for u in hQP
                    if cat.equal(cat.compose(square.pi0, u), a) and cat.equal(cat.compose(square.pi1, u), c)
                )
                if n != 1:
                    return False
    return True


# -- dimension functions ----------------------------------------------------


@dataclass
class DimensionFunction:
    monoid: MonoidSpec
    evaluate: Callable[[Any], Any]
    name: str = "dim"
    warnings: List[str] = field(default_factory=list)

    def __call__(self, X):
        return self.monoid.check(self.evaluate(X))


@dataclass
class AdmissibleSquare:
    """A pullback square with a retraction witness for ``r`` and a class for ``f``."""

    square: CospanSquare
    r_witness: SectionRetractionWitness
    f_class: MorphismClass
    label: str = ""


def verify_dimension_on_square(
    cat: Category,
    dim: DimensionFunction,
    square: CospanSquare,
    r_witness: Optional[SectionRetractionWitness],
    f_class: Optional[MorphismClass],
    label: str = "",
) -> CheckRecord:
    """Check ``dim(P) + dim(B) == dim(A) + dim(C)`` on a witnessed square.

    Returns a not-applicable record when the witnesses do not certify that
    ``r`` is a retraction and ``f`` is a section or retraction.
    """
    name = f"dimension[{dim.name}]" + (f" {label}" if label else "")
    if r_witness is None or not cat.equal(r_witness.retraction, square.r) or not r_witness.verify(cat):
        return CheckRecord(name, NA, {"reason": "r is not a certified retraction"})
    certified = False
    if f_class is not None:
        for w in (f_class.as_section, f_class.as_retraction):
            if w is not None and w.verify(cat):
                certified = True
    if not certified:
        return CheckRecord(name, NA, {"reason": "f is not a certified section or retraction"})
    m = dim.monoid
    B = cat.cod(square.r)
    A = cat.dom(square.r)
    C = cat.dom(square.f)
    dP, dB, dA, dC = dim(square.apex), dim(B), dim(A), dim(C)
    lhs = combine(m, dP, dB)
    rhs = combine(m, dA, dC)
    ok = m.eq(lhs, rhs)
    return CheckRecord(
        name,
        PASS if ok else FAIL,
        {"dim_P": dP, "dim_B": dB, "dim_A": dA, "dim_C": dC, "f_kind": f_class.kind},
        lhs,
        rhs,
    )


# -- functors ---------------------------------------------------------------


@dataclass
class FunctorData:
    source: Category
    target: Category
    on_obj: Callable[[Any], Any]
    on_mor: Callable[[Any], Any]
    name: str = "F"

    def __call__(self, x):
        return self.on_obj(x)

    def square(self, sq: CospanSquare) -> CospanSquare:
        return CospanSquare(
            self.on_mor(sq.f), self.on_mor(sq.r), self.on_obj(sq.apex), self.on_mor(sq.pi0), self.on_mor(sq.pi1)
        )


def identity_functor(cat: Category) -> FunctorData:
    return FunctorData(cat, cat, lambda X: X, lambda f: f, name="Id")


def compose_functors(F: FunctorData, G: FunctorData) -> FunctorData:
    """``F o G``: apply ``G`` first."""
    return FunctorData(
        G.source,
        F.target,
        lambda X: F.on_obj(G.on_obj(X)),
        lambda f: F.on_mor(G.on_mor(f)),
        name=f"{F.name}.{G.name}",
    )


def transport_dimension(
    F: FunctorData,
    dim_target: DimensionFunction,
    sample_squares: Iterable[CospanSquare] = (),
) -> DimensionFunction:
    """Pull a dimension back along ``F``.

    Each sampled source square whose image is not a pullback adds a warning;
    the result is then only known to be a candidate dimension.
    """
    warnings = list(dim_target.warnings)
    for i, sq in enumerate(sample_squares):
        try:
            ok = is_pullback(F.target, F.square(sq))
        except UndecidableError:
            warnings.append(f"square {i}: preservation undecidable")
            continue
        if not ok:
            warnings.append(f"square {i}: {F.name} does not preserve this pullback")
    return DimensionFunction(
        dim_target.monoid,
        lambda X: dim_target.evaluate(F.on_obj(X)),
        name=f"{dim_target.name}.{F.name}",
        warnings=warnings,
    )


# -- opposite categories ----------------------------------------------------


class Opposite(Category):
    """The opposite of a category with pushouts.

    Morphisms are the underlying ones read backwards, so ``dom`` and ``cod``
    swap and pullbacks are computed as underlying pushouts.
    """

    def __init__(self, base: Category, name: Optional[str] = None):
        self.base = base
        self.name = name or f"{base.name}^op"

    def identity(self, X):
        return self.base.identity(X)

    def compose(self, g, f):
        return self.base.compose(f, g)

    def dom(self, f):
        return self.base.cod(f)

    def cod(self, f):
        return self.base.dom(f)

    def equal(self, f, g):
        return self.base.equal(f, g)

    def homs(self, X, Y):
        return self.base.homs(Y, X)

    def inverse(self, f):
        return self.base.inverse(f)

    def describe(self, x):
        return self.base.describe(x)

    def classify(self, f):
        base = self.base.classify(f)
        out = MorphismClass(decided=base.decided)
        # a base retraction g o f == 1 reads as an opposite section, and back
        if base.as_retraction is not None:
            w = base.as_retraction
            out.as_section = SectionRetractionWitness(section=w.retraction, retraction=w.section)
        if base.as_section is not None:
            w = base.as_section
            out.as_retraction = SectionRetractionWitness(section=w.retraction, retraction=w.section)
        return out

    def pullback(self, f, r):
        po = self.base.pushout(f, r)
        if po is None:
            return None
        return CospanSquare(f, r, po.apex, po.i0, po.i1, mediate=lambda a, c: po.copair(a, c))

    def pushout(self, f, s):
        pb = self.base.pullback(f, s)
        if pb is None:
            return None
        return PushoutSquare(f, s, pb.apex, pb.pi0, pb.pi1, copair=lambda a, c: pb.mediate(a, c))


# -- sampling ---------------------------------------------------------------


def sample_admissible_squares(
    cat: Category,
    objects: Sequence[Any],
    budget: int,
    seed: int = 0,
) -> List[AdmissibleSquare]:
    """Draw up to ``budget`` witnessed pullback squares from a finite corpus.

    Every emitted square has ``r`` a retraction with a recorded section and
    ``f`` a certified section or retraction.  Requires enumerable homs.
    """
    if budget <= 0:
        return []
    rng = random.Random(seed)
    retractions: Dict[tuple, list] = {}
    admissible_f: Dict[tuple, list] = {}

    def retractions_into(i, j):
        key = (i, j)
        if key not in retractions:
            found = []
            for r in cat.homs(objects[i], objects[j]) or []:
                cls = cat.classify(r)
                if cls.as_retraction is not None:
                    found.append((r, cls.as_retraction))
            retractions[key] = found
        return retractions[key]

    def fs_into(k, j):
        key = (k, j)
        if key not in admissible_f:
            found = []
            for f in cat.homs(objects[k], objects[j]) or []:
                cls = cat.classify(f)
                if cls.is_section or cls.is_retraction:
                    found.append((f, cls))
            admissible_f[key] = found
        return admissible_f[key]

    n = len(objects)
    pairs = [(i, j) for i in range(n) for j in range(n) if retractions_into(i, j)]
    out: List[AdmissibleSquare] = []
    if not pairs:
        return out
    for _ in range(budget):
        i, j = rng.choice(pairs)
        ks = [k for k in range(n) if fs_into(k, j)]
        k = rng.choice(ks)
        r, rw = rng.choice(retractions_into(i, j))
        f, fc = rng.choice(fs_into(k, j))
        sq = cat.pullback(f, r)
        if sq is None:
            continue
        label = f"A={cat.describe(objects[i])} B={cat.describe(objects[j])} C={cat.describe(objects[k])}"
        out.append(AdmissibleSquare(sq, rw, fc, label))
    return out


def run_dimension_harness(
    cat: Category, dim: DimensionFunction, squares: Sequence[AdmissibleSquare], name: str
) -> ViolationReport:
    report = ViolationReport(name)
    for i, s in enumerate(squares):
        rec = verify_dimension_on_square(cat, dim, s.square, s.r_witness, s.f_class, label=f"#{i}")
        rec.witnesses["square"] = s.label
        report.add(rec)
    return report

