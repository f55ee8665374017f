"""Tangent structures, additive and differential bundles, and their checkers.

Everything here is generic over a :class:`~tangentdim.catcore.Category`.
Pairings into pullbacks are built with :func:`~tangentdim.catcore.mediate`,
so the checkers work on any square the category can certify, including the
images of pullback powers under ``T``.

Conventions, for an object ``M``:

* ``p: TM -> M``, ``zero: M -> TM``, ``plus: T2M -> TM``
* ``lift: TM -> TTM`` and ``flip: TTM -> TTM``
* ``T2M`` is the category's pullback of ``p`` along ``p``; ``T3M`` is the
  pullback of ``p`` along ``p o pi1: T2M -> M``.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

from .catcore import (
    Category,
    CospanSquare,
    DimensionFunction,
    MorphismClass,
    NotACone,
    SectionRetractionWitness,
    UndecidableError,
    is_pullback,
    mediate,
    verify_dimension_on_square,
)
from .monoid import MonoidUsageError
from .report import FAIL, PASS, CheckRecord, ViolationReport


@dataclass
class TangentStructureData:
    """An endofunctor with the five structure families.

    The families are callables from an object to the component morphism.
    ``plus(M)`` must have domain ``self.T2(M).apex``.
    """

    name: str
    category: Category
    T_obj: Callable[[Any], Any]
    T_mor: Callable[[Any], Any]
    p: Callable[[Any], Any]
    zero: Callable[[Any], Any]
    plus: Callable[[Any], Any]
    lift: Callable[[Any], Any]
    flip: Callable[[Any], Any]
    _t_cache: Dict = field(default_factory=dict, init=False, repr=False)
    _sq_cache: Dict = field(default_factory=dict, init=False, repr=False)

    def T(self, X, n: int = 1):
        for _ in range(n):
            key = X
            try:
                X = self._t_cache[key]
            except (KeyError, TypeError):
                Y = self.T_obj(X)
                try:
                    self._t_cache[key] = Y
                except TypeError:
                    pass
                X = Y
        return X

    def Tf(self, f, n: int = 1):
        for _ in range(n):
            f = self.T_mor(f)
        return f

    def T2(self, X) -> CospanSquare:
        key = ("T2", X)
        if key not in self._sq_cache:
            p = self.p(X)
            sq = self.category.pullback(p, p)
            if sq is None:
                raise UndecidableError(f"pullback power T2 of {X!r} does not exist")
            self._sq_cache[key] = sq
        return self._sq_cache[key]

    def T3(self, X) -> CospanSquare:
        key = ("T3", X)
        if key not in self._sq_cache:
            cat = self.category
            sq2 = self.T2(X)
            p = self.p(X)
            sq = cat.pullback(p, cat.compose(p, sq2.pi1))
            if sq is None:
                raise UndecidableError(f"pullback power T3 of {X!r} does not exist")
            self._sq_cache[key] = sq
        return self._sq_cache[key]

    def mutate(self, **families) -> "TangentStructureData":
        """A copy with some families replaced and fresh caches."""
        name = families.pop("name", self.name + "*")
        return dataclasses.replace(self, name=name, **families)

    def bundle(self, X) -> "AdditiveBundleData":
        """``(TX, X, p, +, 0)``."""
        return AdditiveBundleData(self.T(X), X, self.p(X), self.plus(X), self.zero(X), self.T2(X), self.T3(X))

    def T_bundle(self, X) -> "AdditiveBundleData":
        """``T`` applied to :meth:`bundle`, over ``TX``."""
        return apply_functor_to_bundle(self, self.bundle(X))


@dataclass
class AdditiveBundleData:
    """``(X, A, p, plus, zero)`` with chosen pullback powers ``X2`` and ``X3``.

    ``square2`` is a pullback of ``p`` along ``p``.  ``square3`` has
    ``r = p o square2.pi1`` and ``f = p``; when omitted it is computed.
    """

    X: Any
    A: Any
    p: Any
    plus: Any
    zero: Any
    square2: CospanSquare
    square3: Optional[CospanSquare] = None


def apply_functor_to_bundle(ts: TangentStructureData, b: AdditiveBundleData) -> AdditiveBundleData:
    T = ts.Tf

    def Tsq(sq):
        return CospanSquare(T(sq.f), T(sq.r), ts.T(sq.apex), T(sq.pi0), T(sq.pi1))

    return AdditiveBundleData(
        ts.T(b.X),
        ts.T(b.A),
        T(b.p),
        T(b.plus),
        T(b.zero),
        Tsq(b.square2),
        Tsq(b.square3) if b.square3 is not None else None,
    )


@dataclass
class DifferentialBundleData:
    """``(E, M, q, zeta, sigma, lam)`` with ``sigma`` defined on ``square2.apex``."""

    E: Any
    M: Any
    q: Any
    zeta: Any
    sigma: Any
    lam: Any
    square2: CospanSquare
    square3: Optional[CospanSquare] = None

    def additive(self) -> AdditiveBundleData:
        return AdditiveBundleData(self.E, self.M, self.q, self.sigma, self.zeta, self.square2, self.square3)


@dataclass
class StrongDimensionData:
    """A rig-valued dimension with ``dim(TX) == a * dim(X)``."""

    dim: DimensionFunction
    a: Any


# -- helpers ----------------------------------------------------------------


def _guard(report: ViolationReport, check: str, thunk: Callable[[], bool], witnesses=None) -> bool:
    """Record ``thunk()``; a failed pairing or undefined pullback is a failure."""
    try:
        ok = bool(thunk())
        err = None
    except (NotACone, UndecidableError, ValueError, KeyError) as exc:
        ok = False
        err = f"{type(exc).__name__}: {exc}"
    w = dict(witnesses or {})
    if err:
        w["error"] = err
    report.add(CheckRecord(check, PASS if ok else FAIL, w))
    return ok


def third_square(cat: Category, b: AdditiveBundleData) -> CospanSquare:
    if b.square3 is not None:
        return b.square3
    sq = cat.pullback(b.p, cat.compose(b.p, b.square2.pi1))
    if sq is None:
        raise UndecidableError("third pullback power does not exist")
    return sq


def check_additive_bundle(
    cat: Category, b: AdditiveBundleData, check_powers: bool = True, name: str = "additive-bundle"
) -> ViolationReport:
    """Check the additive bundle laws.

    Records: pullback powers, ``p o + == p o pi0 == p o pi1``, ``p o 0 == 1``,
    associativity, commutativity, and both unit laws.
    """
    rep = ViolationReport(name)
    eq, c = cat.equal, cat.compose
    sq2 = b.square2
    pi0, pi1 = sq2.pi0, sq2.pi1
    idX, idA = cat.identity(b.X), cat.identity(b.A)
    if check_powers:
        _guard(rep, "pullback-power-2", lambda: is_pullback(cat, sq2))
    _guard(rep, "p-plus-pi0", lambda: eq(c(b.p, b.plus), c(b.p, pi0)))
    _guard(rep, "p-plus-pi1", lambda: eq(c(b.p, b.plus), c(b.p, pi1)))
    _guard(rep, "p-zero", lambda: eq(c(b.p, b.zero), idA))
    zp = c(b.zero, b.p)
    _guard(rep, "unit-left", lambda: eq(c(b.plus, mediate(cat, sq2, zp, idX)), idX))
    _guard(rep, "unit-right", lambda: eq(c(b.plus, mediate(cat, sq2, idX, zp)), idX))
    _guard(rep, "commutativity", lambda: eq(c(b.plus, mediate(cat, sq2, pi1, pi0)), b.plus))

    def assoc():
        sq3 = third_square(cat, b)
        if check_powers and not is_pullback(cat, sq3):
            raise NotACone("third pullback power is not a pullback")
        q0 = c(pi0, sq3.pi0)
        q1 = c(pi1, sq3.pi0)
        q2 = sq3.pi1
        one_plus = mediate(cat, sq2, q0, c(b.plus, mediate(cat, sq2, q1, q2)))
        plus_one = mediate(cat, sq2, c(b.plus, mediate(cat, sq2, q0, q1)), q2)
        return eq(c(b.plus, one_plus), c(b.plus, plus_one))

    _guard(rep, "associativity", assoc)
    return rep


def check_bundle_morphism(
    cat: Category, b1: AdditiveBundleData, b2: AdditiveBundleData, f, g, name: str = "bundle-morphism"
) -> ViolationReport:
    """Check that ``(f, g)`` is an additive bundle morphism ``b1 -> b2``."""
    rep = ViolationReport(name)
    eq, c = cat.equal, cat.compose
    _guard(rep, "preserves-projection", lambda: eq(c(b2.p, f), c(g, b1.p)))
    _guard(
        rep,
        "preserves-addition",
        lambda: eq(
            c(b2.plus, mediate(cat, b2.square2, c(f, b1.square2.pi0), c(f, b1.square2.pi1))),
            c(f, b1.plus),
        ),
    )
    _guard(rep, "preserves-zero", lambda: eq(c(f, b1.zero), c(b2.zero, g)))
    return rep


def T_square(ts: TangentStructureData, sq: CospanSquare, n: int = 1) -> CospanSquare:
    T = lambda f: ts.Tf(f, n)
    return CospanSquare(T(sq.f), T(sq.r), ts.T(sq.apex, n), T(sq.pi0), T(sq.pi1))


# -- tangent axioms ---------------------------------------------------------


def check_object_axioms(cat: Category, ts: TangentStructureData, M, depth: int = 1) -> ViolationReport:
    """All axioms that concern a single object ``M``."""
    rep = ViolationReport(f"{ts.name}@{cat.describe(M)}")
    eq, c, T = cat.equal, cat.compose, ts.Tf
    try:
        TM, TTM = ts.T(M), ts.T(M, 2)
        ts.T(M, 3)  # built up front so a failing construction is reported here
        base = ts.bundle(M)
        tb = ts.T_bundle(M)
        pb = ts.bundle(TM)
    except (UndecidableError, NotACone, ValueError) as exc:
        rep.add(CheckRecord("structure-construction", FAIL, {"error": f"{type(exc).__name__}: {exc}"}))
        return rep
    lift, flip = ts.lift(M), ts.flip(M)
    rep.extend(check_additive_bundle(cat, base), "bundle")
    # the T-image bundle needs T to preserve the pullback powers
    rep.extend(check_additive_bundle(cat, tb), "T-bundle")
    for j in range(2, depth + 1):
        _guard(rep, f"T^{j}-preserves-T2", lambda j=j: is_pullback(cat, T_square(ts, ts.T2(M), j)))
        _guard(rep, f"T^{j}-preserves-T3", lambda j=j: is_pullback(cat, T_square(ts, ts.T3(M), j)))
    rep.extend(check_bundle_morphism(cat, base, tb, lift, ts.zero(M)), "lift-bundle-morphism")
    rep.extend(check_bundle_morphism(cat, tb, pb, flip, cat.identity(TM)), "flip-bundle-morphism")
    _guard(rep, "flip-involution", lambda: eq(c(flip, flip), cat.identity(TTM)))
    _guard(rep, "flip-fixes-lift", lambda: eq(c(flip, lift), lift))
    lift_T, flip_T = ts.lift(TM), ts.flip(TM)
    _guard(rep, "lift-coassociative", lambda: eq(c(lift_T, lift), c(T(lift), lift)))
    _guard(
        rep,
        "flip-braid",
        lambda: eq(c(flip_T, c(T(flip), flip_T)), c(T(flip), c(flip_T, T(flip)))),
    )
    _guard(
        rep,
        "lift-flip-compatibility",
        lambda: eq(c(flip_T, c(T(flip), lift_T)), c(T(lift), flip)),
    )
    _guard(rep, "functor-identity", lambda: eq(T(cat.identity(M)), cat.identity(TM)))
    return rep


def check_naturality(cat: Category, ts: TangentStructureData, f) -> ViolationReport:
    """Naturality of all five families and functoriality on ``f: M -> N``."""
    M, N = cat.dom(f), cat.cod(f)
    rep = ViolationReport(f"{ts.name}@naturality")
    eq, c, T = cat.equal, cat.compose, ts.Tf
    Tf, TTf = T(f), T(f, 2)
    w = {"morphism": cat.describe(f)}
    _guard(rep, "natural-p", lambda: eq(c(ts.p(N), Tf), c(f, ts.p(M))), w)
    _guard(rep, "natural-zero", lambda: eq(c(Tf, ts.zero(M)), c(ts.zero(N), f)), w)

    def plus_nat():
        sqM, sqN = ts.T2(M), ts.T2(N)
        T2f = mediate(cat, sqN, c(Tf, sqM.pi0), c(Tf, sqM.pi1))
        return eq(c(ts.plus(N), T2f), c(Tf, ts.plus(M)))

    _guard(rep, "natural-plus", plus_nat, w)
    _guard(rep, "natural-lift", lambda: eq(c(TTf, ts.lift(M)), c(ts.lift(N), Tf)), w)
    _guard(rep, "natural-flip", lambda: eq(c(TTf, ts.flip(M)), c(ts.flip(N), TTf)), w)
    return rep


def check_functoriality(cat: Category, ts: TangentStructureData, g, f) -> ViolationReport:
    rep = ViolationReport(f"{ts.name}@functoriality")
    _guard(
        rep,
        "functor-composition",
        lambda: cat.equal(ts.Tf(cat.compose(g, f)), cat.compose(ts.Tf(g), ts.Tf(f))),
        {"g": cat.describe(g), "f": cat.describe(f)},
    )
    return rep


def check_tangent_axioms(
    cat: Category,
    ts: TangentStructureData,
    objects: Sequence[Any],
    morphisms: Sequence[Any] = (),
    depth: int = 1,
) -> ViolationReport:
    """Check every tangent-structure axiom on the given objects and morphisms.

    ``depth`` is how many applications of ``T`` must preserve the pullback
    powers; universality is checked separately by :func:`check_universality`.
    """
    rep = ViolationReport(f"tangent-axioms[{ts.name}]", corpus=[cat.describe(X) for X in objects])
    for X in objects:
        rep.extend(check_object_axioms(cat, ts, X, depth), cat.describe(X))
    for f in morphisms:
        rep.extend(check_naturality(cat, ts, f), cat.describe(f))
    for g in morphisms:
        for f in morphisms:
            if cat.dom(g) == cat.cod(f):
                rep.extend(check_functoriality(cat, ts, g, f))
    return rep


def build_nu(cat: Category, ts: TangentStructureData, M):
    """``T(+) o <lift o pi0, zero_T o pi1>: T2M -> TTM``.

    The pairing lands in ``T(T2M)``, the image of the pullback power.
    """
    sq = ts.T2(M)
    TTsq = T_square(ts, sq)
    c = cat.compose
    pair = mediate(cat, TTsq, c(ts.lift(M), sq.pi0), c(ts.zero(ts.T(M)), sq.pi1))
    return c(ts.Tf(ts.plus(M)), pair)


def universality_square(cat: Category, ts: TangentStructureData, M) -> CospanSquare:
    """The square ``(T2M, nu, p o pi0; TTM -T(p)-> TM <-0- M)``."""
    sq = ts.T2(M)
    nu = build_nu(cat, ts, M)
    return CospanSquare(
        f=ts.zero(M),
        r=ts.Tf(ts.p(M)),
        apex=sq.apex,
        pi0=nu,
        pi1=cat.compose(ts.p(M), sq.pi0),
    )


def check_universality(cat: Category, ts: TangentStructureData, X, k: int = 1) -> ViolationReport:
    """The universality square is a pullback and stays one under ``T^j``, ``j <= k``."""
    rep = ViolationReport(f"universality[{ts.name}]@{cat.describe(X)}", corpus=[cat.describe(X)])
    try:
        sq = universality_square(cat, ts, X)
    except (NotACone, UndecidableError, ValueError) as exc:
        rep.add(CheckRecord("nu-construction", FAIL, {"error": f"{type(exc).__name__}: {exc}"}))
        return rep
    _guard(rep, "universality-pullback", lambda: is_pullback(cat, sq))
    for j in range(1, k + 1):
        _guard(rep, f"T^{j}-preserves-universality", lambda j=j: is_pullback(cat, T_square(ts, sq, j)))
    return rep


# -- differential bundles ---------------------------------------------------


def check_differential_bundle(
    cat: Category, ts: TangentStructureData, db: DifferentialBundleData, depth: int = 1
) -> ViolationReport:
    """Check the differential bundle axioms for ``db`` against ``ts``."""
    rep = ViolationReport(f"differential-bundle[{ts.name}]")
    eq, c, T = cat.equal, cat.compose, ts.Tf
    ab = db.additive()
    rep.extend(check_additive_bundle(cat, ab), "bundle")
    try:
        sq3 = third_square(cat, ab)
    except UndecidableError as exc:
        rep.add(CheckRecord("pullback-power-3", FAIL, {"error": str(exc)}))
        return rep
    for j in range(1, depth + 1):
        _guard(rep, f"T^{j}-preserves-E2", lambda j=j: is_pullback(cat, T_square(ts, db.square2, j)))
        _guard(rep, f"T^{j}-preserves-E3", lambda j=j: is_pullback(cat, T_square(ts, sq3, j)))
    tb = apply_functor_to_bundle(ts, AdditiveBundleData(db.E, db.M, db.q, db.sigma, db.zeta, db.square2, sq3))
    rep.extend(check_bundle_morphism(cat, ab, tb, db.lam, ts.zero(db.M)), "lift-over-zero")
    rep.extend(check_bundle_morphism(cat, ab, ts.bundle(db.E), db.lam, db.zeta), "lift-over-zeta")

    def universal():
        sq = db.square2
        Tsq = T_square(ts, sq)
        pair = mediate(cat, Tsq, c(db.lam, sq.pi0), c(ts.zero(db.E), sq.pi1))
        mu = c(T(db.sigma), pair)
        U = CospanSquare(f=ts.zero(db.M), r=T(db.q), apex=sq.apex, pi0=mu, pi1=c(db.q, sq.pi0))
        return is_pullback(cat, U)

    _guard(rep, "lift-universality", universal)
    _guard(rep, "lift-coassociative", lambda: eq(c(ts.lift(db.E), db.lam), c(T(db.lam), db.lam)))
    return rep


# -- dimension equations ----------------------------------------------------


def check_weak_equation(ts: TangentStructureData, dim: DimensionFunction, X) -> CheckRecord:
    """``dim(TTX) + 2 dim(X) == 3 dim(TX)`` in the dimension's monoid."""
    m = dim.monoid
    d0, d1, d2 = dim(X), dim(ts.T(X)), dim(ts.T(X, 2))
    lhs = m.sum([d2, d0, d0])
    rhs = m.sum([d1, d1, d1])
    ok = m.eq(lhs, rhs)
    return CheckRecord(
        f"weak-equation[{ts.name},{dim.name}]",
        PASS if ok else FAIL,
        {"object": ts.category.describe(X), "dim_X": d0, "dim_TX": d1, "dim_TTX": d2},
        lhs,
        rhs,
    )


def weak_equation_proof_squares(cat: Category, ts: TangentStructureData, dim: DimensionFunction, X) -> List[CheckRecord]:
    """The two dimension instances whose sum is the weak equation.

    The pullback power ``T2X`` gives ``dim T2X + dim X = 2 dim TX``; the
    universality square gives ``dim T2X + dim TX = dim TTX + dim X``.
    """
    p, z = ts.p(X), ts.zero(X)
    sq2 = ts.T2(X)
    p_witness = SectionRetractionWitness(section=z, retraction=p)
    out = [
        verify_dimension_on_square(
            cat, dim, sq2, p_witness, MorphismClass(as_retraction=p_witness), label="pullback-power"
        )
    ]
    U = universality_square(cat, ts, X)
    Tp_witness = SectionRetractionWitness(section=ts.Tf(z), retraction=ts.Tf(p))
    zero_class = MorphismClass(as_section=SectionRetractionWitness(section=z, retraction=p))
    out.append(verify_dimension_on_square(cat, dim, U, Tp_witness, zero_class, label="universality"))
    return out


def check_strong_dichotomy(sd: StrongDimensionData, X) -> Dict[str, Any]:
    """Evaluate ``(a - 1)(a - 2) dim(X)`` and name the branch that holds.

    Returns a dict with ``branch`` one of ``a=1``, ``a=2``, ``dim-zero`` or
    ``violation``, and ``value`` the evaluated product.

    Raises:
        MonoidUsageError: if the dimension's monoid is not a rig.
    """
    m = sd.dim.monoid
    if not m.is_rig:
        raise MonoidUsageError(f"strong dimensions need a rig, got {m.tag}")
    a, d = m.check(sd.a), sd.dim(X)
    one, neg = m.one, m.neg
    value = m.mul(m.mul(m.op(a, neg(one)), m.op(a, neg(m.op(one, one)))), d)
    if not m.eq(value, m.unit):
        branch = "violation"
    elif m.eq(a, one):
        branch = "a=1"
    elif m.eq(a, m.op(one, one)):
        branch = "a=2"
    else:
        branch = "dim-zero"
    return {"branch": branch, "value": value, "a": a, "dim": d}


def check_strong_dimension(sd: StrongDimensionData, ts: TangentStructureData, objects: Sequence[Any]) -> ViolationReport:
    """``dim(TX) == a dim(X)`` on each object, plus the dichotomy."""
    m = sd.dim.monoid
    rep = ViolationReport(f"strong-dimension[{ts.name},{sd.dim.name},a={sd.a}]")
    for X in objects:
        lhs, rhs = sd.dim(ts.T(X)), m.mul(sd.a, sd.dim(X))
        rep.record("multiplicative", m.eq(lhs, rhs), {"object": ts.category.describe(X)}, lhs, rhs)
        res = check_strong_dichotomy(sd, X)
        rep.record("dichotomy", res["branch"] != "violation", {"object": ts.category.describe(X), **res}, res["value"], 0)
    return rep


def check_diffbun_equations(
    ts: TangentStructureData, dim: DimensionFunction, db: DifferentialBundleData, a: Any = None
) -> ViolationReport:
    """``dim TE + 2 dim M == dim TM + 2 dim E``, and the strong form if ``a`` is given."""
    m = dim.monoid
    rep = ViolationReport(f"diffbun-equations[{ts.name},{dim.name}]")
    dE, dM = dim(db.E), dim(db.M)
    dTE, dTM = dim(ts.T(db.E)), dim(ts.T(db.M))
    lhs = m.sum([dTE, dM, dM])
    rhs = m.sum([dTM, dE, dE])
    w = {"dim_E": dE, "dim_M": dM, "dim_TE": dTE, "dim_TM": dTM}
    rep.record("weak", m.eq(lhs, rhs), w, lhs, rhs)
    if a is not None:
        if not m.is_rig:
            raise MonoidUsageError(f"strong form needs a rig, got {m.tag}")
        k = m.op(a, m.neg(m.op(m.one, m.one)))
        l2, r2 = m.mul(k, dE), m.mul(k, dM)
        rep.record("strong", m.eq(l2, r2), dict(w, a=a), l2, r2)
    return rep


def reject_endofunctor_by_dimension(
    T_obj: Callable[[Any], Any], dim: DimensionFunction, objects: Sequence[Any], describe: Callable = repr, name="T"
) -> ViolationReport:
    """Test a candidate endofunctor against the weak equation.

    A failure certifies that no tangent structure has this functor.  Passing
    everywhere is only a necessary condition and is labelled as such.
    """
    m = dim.monoid
    rep = ViolationReport(f"obstruction[{name},{dim.name}]", corpus=[describe(X) for X in objects])
    for X in objects:
        TX = T_obj(X)
        d0, d1, d2 = dim(X), dim(TX), dim(T_obj(TX))
        lhs, rhs = m.sum([d2, d0, d0]), m.sum([d1, d1, d1])
        rep.record(
            "weak-equation",
            m.eq(lhs, rhs),
            {"object": describe(X), "dim_X": d0, "dim_TX": d1, "dim_TTX": d2, "equation": f"{d2}+2*{d0} vs 3*{d1}"},
            lhs,
            rhs,
        )
    if rep.status == PASS:
        rep.notes.append("necessary condition passed, not sufficient")
    else:
        rep.notes.append("rejected: no tangent structure has this endofunctor")
    return rep


def trivial_structure(cat: Category) -> TangentStructureData:
    """The identity functor with identity structure maps.

    ``plus`` is the first projection of the pullback power, which is the
    identity up to the canonical isomorphism ``T2M = M``.
    """
    ts = TangentStructureData(
        "trivial", cat, lambda X: X, lambda f: f, cat.identity, cat.identity, None, cat.identity, cat.identity
    )
    ts.plus = lambda X: ts.T2(X).pi0
    return ts
