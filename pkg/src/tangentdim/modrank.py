"""Finitely generated abelian groups by presentation, and their rank.

A module ``Z^n / im(R)`` is stored as ``n`` and the ``n x k`` relation matrix
``R`` (relations are columns).  A homomorphism ``M -> N`` is an integer
matrix ``F`` with ``F @ R_M`` inside the column lattice of ``R_N``; two
matrices are the same homomorphism when their difference lands there.
Vector spaces over ``F_p`` are the modules annihilated by ``p``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from .catcore import (
    AdmissibleSquare,
    Category,
    CospanSquare,
    DimensionFunction,
    MorphismClass,
    PushoutSquare,
    SectionRetractionWitness,
    run_dimension_harness,
)
from .monoid import INF, INT_RIG, NAT_ADD, NAT_MUL
from .report import FAIL, PASS, CheckRecord, ViolationReport
from .snf import IntegerSolver, IntMatrix, block_diag, hstack, smith_normal_form, vstack
from .tangent import StrongDimensionData, TangentStructureData, check_strong_dichotomy, trivial_structure


class ModuleUsageError(ValueError):
    pass


class FGModule:
    """``Z^gens / im(rels)``."""

    __slots__ = ("gens", "rels", "_key", "_snf", "_solver")

    def __init__(self, gens: int, rels: Optional[IntMatrix] = None):
        if rels is None:
            rels = IntMatrix.zeros(gens, 0)
        if not isinstance(rels, IntMatrix):
            rels = IntMatrix(rels, gens, len(rels[0]) if rels else 0)
        if rels.nrows != gens:
            raise ModuleUsageError(f"relation matrix has {rels.nrows} rows for {gens} generators")
        self.gens = gens
        self.rels = rels
        self._key = (gens, rels.key())
        self._snf = None
        self._solver = None

    def __eq__(self, other):
        return isinstance(other, FGModule) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    @property
    def snf(self):
        if self._snf is None:
            self._snf = smith_normal_form(self.rels)
        return self._snf

    @property
    def solver(self) -> IntegerSolver:
        if self._solver is None:
            self._solver = IntegerSolver(self.rels)
        return self._solver

    def contains_relation(self, v: Sequence[int]) -> bool:
        """Whether ``v`` is zero in the module."""
        if not any(v):
            return True
        return self.solver.solve(v) is not None

    def invariants(self):
        """``(free_rank, torsion)`` with torsion factors greater than one."""
        s = self.snf
        nz = [d for d in s.invariant_factors if d != 0]
        return self.gens - len(nz), [d for d in nz if d != 1]

    def __repr__(self):
        free, tors = self.invariants()
        parts = []
        if free:
            parts.append("Z" if free == 1 else f"Z^{free}")
        parts += [f"Z/{d}" for d in tors]
        return " + ".join(parts) if parts else "0"


def free_module(n: int) -> FGModule:
    return FGModule(n)


def cyclic_module(*orders: int) -> FGModule:
    """``Z/d1 + Z/d2 + ...``; an order 0 gives a copy of ``Z``."""
    n = len(orders)
    return FGModule(n, IntMatrix([[d if i == j else 0 for j in range(n)] for i, d in enumerate(orders)], n, n))


def fp_space(p: int, k: int) -> FGModule:
    return cyclic_module(*([p] * k))


def direct_sum(*ms: FGModule) -> FGModule:
    return FGModule(sum(m.gens for m in ms), block_diag(*[m.rels for m in ms]))


def module_from_json(d: Dict) -> FGModule:
    n = d["gens"]
    rels = d.get("rels", [])
    if not rels or not rels[0]:
        if rels and len(rels) != n:
            raise ModuleUsageError(f"rels must have {n} rows (row-major, one row per generator)")
        return FGModule(n)
    if any(len(r) != len(rels[0]) for r in rels):
        raise ModuleUsageError("relation rows must have equal length")
    if rels and len(rels) != n:
        raise ModuleUsageError(f"rels must have {n} rows (row-major, one row per generator)")
    return FGModule(n, IntMatrix(rels, n, len(rels[0]) if rels else 0))


class ModuleHom:
    __slots__ = ("dom", "cod", "M")

    def __init__(self, dom: FGModule, cod: FGModule, M: IntMatrix, check: bool = True):
        if M.shape != (cod.gens, dom.gens):
            raise ModuleUsageError(f"matrix shape {M.shape} does not match {cod.gens}x{dom.gens}")
        self.dom, self.cod, self.M = dom, cod, M
        if check:
            image = M @ dom.rels
            for col in image.columns():
                if not cod.contains_relation(col):
                    raise ModuleUsageError("matrix does not respect the domain relations")

    def __repr__(self):
        return f"Hom({self.dom!r} -> {self.cod!r}, {self.M.rows})"


def rank(M: FGModule) -> int:
    """Free rank: generators minus the rank of the relation matrix."""
    return M.invariants()[0]


def cardinality(M: FGModule):
    free, tors = M.invariants()
    if free:
        return INF
    out = 1
    for d in tors:
        out *= d
    return out


def dim_fp(M: FGModule, p: int) -> int:
    """``dim_{F_p}(M / pM)``, the dimension for a module killed by ``p``."""
    aug = hstack(M.rels, IntMatrix.identity(M.gens).scale(p))
    return sum(1 for d in smith_normal_form(aug).invariant_factors if d % p == 0)


def rank_q(cols: IntMatrix) -> int:
    """Rank over the rationals by fraction-exact elimination."""
    a = [[Fraction(x) for x in row] for row in cols.rows]
    r = 0
    ncols = cols.ncols
    for j in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][j] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(len(a)):
            if i != r and a[i][j] != 0:
                q = a[i][j] / a[r][j]
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


class ModCategory(Category):
    """Finitely generated abelian groups with homomorphisms."""

    name = "Mod"

    def identity(self, X):
        return ModuleHom(X, X, IntMatrix.identity(X.gens), check=False)

    def compose(self, g, f):
        if f.cod != g.dom:
            raise ValueError(f"cannot compose: {f.cod!r} vs {g.dom!r}")
        return ModuleHom(f.dom, g.cod, g.M @ f.M, check=False)

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def equal(self, f, g):
        if f.dom != g.dom or f.cod != g.cod:
            return False
        return all(f.cod.contains_relation(c) for c in (f.M - g.M).columns())

    def describe(self, x):
        return repr(x)

    def pullback(self, f, r):
        return module_pullback(f, r)

    def pushout(self, f, s):
        return module_pushout(f, s)

    def inverse(self, f):
        N, M = f.cod, f.dom
        solver = IntegerSolver(hstack(f.M, N.rels))
        cols = []
        for j in range(N.gens):
            z = solver.solve([int(i == j) for i in range(N.gens)])
            if z is None:
                return None
            cols.append(z[: M.gens])
        G = IntMatrix.from_columns(cols, M.gens)
        for col in (G @ N.rels).columns():
            if not M.contains_relation(col):
                return None
        g = ModuleHom(N, M, G, check=False)
        if not self.equal(self.compose(g, f), self.identity(M)):
            return None
        return g

    def classify(self, f):
        # hom sets are infinite; squares are generated with explicit witnesses
        return MorphismClass(decided=False)


MOD = ModCategory()


def mhom(dom: FGModule, cod: FGModule, rows) -> ModuleHom:
    return ModuleHom(dom, cod, IntMatrix(rows, cod.gens, dom.gens))


def module_pullback(f: ModuleHom, r: ModuleHom) -> CospanSquare:
    """Pullback of ``C -f-> B <-r- A`` as the kernel of ``r - f`` on ``A + C``.

    The apex is generated by a basis of the lattice ``{x : (r - f) x = 0 in B}``
    and related by the relations of ``A + C`` rewritten in that basis.
    """
    A, C, B = r.dom, f.dom, r.cod
    if f.cod != B:
        raise ModuleUsageError("cospan legs have different codomains")
    nA, nC = A.gens, C.gens
    H = hstack(r.M, -f.M)
    big = hstack(H, B.rels)
    kern = IntegerSolver(big).kernel().row_slice(0, nA + nC)
    K = IntegerSolver(kern).image_basis() if kern.ncols else IntMatrix.zeros(nA + nC, 0)
    ksolver = IntegerSolver(K)
    rel_cols = block_diag(A.rels, C.rels)
    P_rels = ksolver.solve_columns(rel_cols)
    if P_rels is None:
        raise AssertionError("relations of A + C must lie in the kernel lattice")
    P = FGModule(K.ncols, P_rels)
    pi0 = ModuleHom(P, A, K.row_slice(0, nA), check=False)
    pi1 = ModuleHom(P, C, K.row_slice(nA, nA + nC), check=False)

    def med(a: ModuleHom, c: ModuleHom) -> ModuleHom:
        U = ksolver.solve_columns(vstack(a.M, c.M))
        if U is None:
            raise ValueError("cone does not land in the pullback")
        return ModuleHom(a.dom, P, U, check=False)

    return CospanSquare(f, r, P, pi0, pi1, mediate=med)


def module_pushout(f: ModuleHom, s: ModuleHom) -> PushoutSquare:
    """Pushout of ``C <-f- B -s-> A`` as ``(A + C)`` modulo the relations and ``(s b, -f b)``."""
    A, C, B = s.cod, f.cod, s.dom
    if f.dom != B:
        raise ModuleUsageError("span legs need a common domain")
    glue = vstack(s.M, -f.M)
    P = FGModule(A.gens + C.gens, hstack(block_diag(A.rels, C.rels), glue))
    i0 = ModuleHom(A, P, vstack(IntMatrix.identity(A.gens), IntMatrix.zeros(C.gens, A.gens)), check=False)
    i1 = ModuleHom(C, P, vstack(IntMatrix.zeros(A.gens, C.gens), IntMatrix.identity(C.gens)), check=False)

    def copair(a: ModuleHom, c: ModuleHom) -> ModuleHom:
        return ModuleHom(P, a.cod, hstack(a.M, c.M))

    return PushoutSquare(f, s, P, i0, i1, copair=copair)


def rank_dimension() -> DimensionFunction:
    return DimensionFunction(NAT_ADD, rank, name="rank")


def rank_rig_dimension() -> DimensionFunction:
    return DimensionFunction(INT_RIG, rank, name="rank")


def cardinality_dimension() -> DimensionFunction:
    return DimensionFunction(NAT_MUL, cardinality, name="card")


def fp_dimension(p: int, rig: bool = False) -> DimensionFunction:
    return DimensionFunction(INT_RIG if rig else NAT_ADD, lambda M: dim_fp(M, p), name=f"dim_F{p}")


def image_rank(h: ModuleHom) -> int:
    """Rank of the image of ``h``, from the rational span of its columns and ``R_cod``."""
    return rank_q(hstack(h.M, h.cod.rels)) - rank_q(h.cod.rels)


# -- tangent structure ------------------------------------------------------


def mod_tangent() -> TangentStructureData:
    """``T V = V + V`` with the first summand as base point.

    In coordinates ``p(v, a) = v``, ``0(v) = (v, 0)``, ``+`` adds the second
    coordinates, ``lift(v, a) = (v, 0, 0, a)`` and ``flip`` swaps the two
    middle coordinates of ``TTV = V^4``.
    """

    def T_obj(V):
        return direct_sum(V, V)

    def T_mor(f):
        return ModuleHom(T_obj(f.dom), T_obj(f.cod), block_diag(f.M, f.M), check=False)

    def blocks(n, k, pos):
        # n x (k*n) matrix selecting block ``pos``
        out = IntMatrix.zeros(n, k * n)
        for i in range(n):
            out.rows[i][pos * n + i] = 1
        return out

    def p(V):
        return ModuleHom(T_obj(V), V, blocks(V.gens, 2, 0), check=False)

    def zero(V):
        return ModuleHom(V, T_obj(V), blocks(V.gens, 2, 0).T, check=False)

    def plus(V):
        sq = ts.T2(V)
        n = V.gens
        base = blocks(n, 2, 0) @ sq.pi0.M
        fib = blocks(n, 2, 1) @ sq.pi0.M + blocks(n, 2, 1) @ sq.pi1.M
        return ModuleHom(sq.apex, T_obj(V), vstack(base, fib), check=False)

    def lift(V):
        n = V.gens
        rows = vstack(blocks(n, 2, 0), IntMatrix.zeros(2 * n, 2 * n), blocks(n, 2, 1))
        return ModuleHom(T_obj(V), T_obj(T_obj(V)), rows, check=False)

    def flip(V):
        n = V.gens
        rows = vstack(blocks(n, 4, 0), blocks(n, 4, 2), blocks(n, 4, 1), blocks(n, 4, 3))
        W = T_obj(T_obj(V))
        return ModuleHom(W, W, rows, check=False)

    ts = TangentStructureData("mod-double", MOD, T_obj, T_mor, p, zero, plus, lift, flip)
    return ts


def mod_trivial() -> TangentStructureData:
    return trivial_structure(MOD)


def plus_one_free_rank() -> TangentStructureData:
    """``T V = V + Z``: natural maps exist but universality fails.

    ``lift`` is forced to be the zero lift by ``flip o lift == lift``.
    """
    Z = free_module(1)

    def T_obj(V):
        return direct_sum(V, Z)

    def T_mor(f):
        return ModuleHom(T_obj(f.dom), T_obj(f.cod), block_diag(f.M, IntMatrix.identity(1)), check=False)

    def p(V):
        n = V.gens
        return ModuleHom(T_obj(V), V, hstack(IntMatrix.identity(n), IntMatrix.zeros(n, 1)), check=False)

    def zero(V):
        return ModuleHom(V, T_obj(V), p(V).M.T, check=False)

    def plus(V):
        sq = ts.T2(V)
        n = V.gens
        base = p(V).M @ sq.pi0.M
        last = IntMatrix([[0] * n + [1]], 1, n + 1)
        fib = last @ sq.pi0.M + last @ sq.pi1.M
        return ModuleHom(sq.apex, T_obj(V), vstack(base, fib), check=False)

    def lift(V):
        n = V.gens
        W = T_obj(T_obj(V))
        M = IntMatrix.zeros(n + 2, n + 1)
        for i in range(n):
            M.rows[i][i] = 1
        return ModuleHom(T_obj(V), W, M, check=False)

    def flip(V):
        n = V.gens
        W = T_obj(T_obj(V))
        M = IntMatrix.identity(n + 2)
        M.rows[n], M.rows[n + 1] = M.rows[n + 1], M.rows[n]
        return ModuleHom(W, W, M, check=False)

    ts = TangentStructureData("plus-one-free-rank", MOD, T_obj, T_mor, p, zero, plus, lift, flip)
    return ts


def mod_corpus() -> List[FGModule]:
    return [free_module(0), free_module(1), free_module(2), cyclic_module(6), cyclic_module(0, 4), fp_space(2, 2), fp_space(3, 1)]


def mod_morphisms() -> List[ModuleHom]:
    Z, Z2, Z6, Z_4 = free_module(1), free_module(2), cyclic_module(6), cyclic_module(0, 4)
    return [
        mhom(Z, Z2, [[1], [2]]),
        mhom(Z2, Z, [[3, -1]]),
        mhom(Z, Z6, [[1]]),
        mhom(Z6, Z6, [[5]]),
        mhom(Z_4, Z6, [[2, 3]]),
        mhom(Z, Z_4, [[1], [1]]),
    ]


# -- sampling ---------------------------------------------------------------


def _random_shear(rng: random.Random, top: FGModule, bottom: FGModule):
    """A homomorphism ``bottom -> top`` with small random coefficients, or zero."""
    for _ in range(10):
        M = IntMatrix([[rng.randint(-2, 2) for _ in range(bottom.gens)] for _ in range(top.gens)], top.gens, bottom.gens)
        try:
            return ModuleHom(bottom, top, M)
        except ModuleUsageError:
            continue
    return ModuleHom(bottom, top, IntMatrix.zeros(top.gens, bottom.gens), check=False)


def _split_projection(rng: random.Random, B: FGModule, K: FGModule):
    """``r: B + K -> B`` and a section, twisted by a random shear."""
    A = direct_sum(B, K)
    n, k = B.gens, K.gens
    h = _random_shear(rng, B, K)
    # r(b, x) = b + h(x); section b -> (b, 0)
    r = ModuleHom(A, B, hstack(IntMatrix.identity(n), h.M), check=False)
    s = ModuleHom(B, A, vstack(IntMatrix.identity(n), IntMatrix.zeros(k, n)), check=False)
    return r, s


def _split_inclusion(rng: random.Random, C: FGModule, K: FGModule):
    """``i: C -> C + K`` and a retraction, twisted by a random shear."""
    B = direct_sum(C, K)
    n, k = C.gens, K.gens
    h = _random_shear(rng, K, C)
    # i(c) = (c, h(c)); retraction (c, x) -> c
    i = ModuleHom(C, B, vstack(IntMatrix.identity(n), h.M), check=False)
    q = ModuleHom(B, C, hstack(IntMatrix.identity(n), IntMatrix.zeros(n, k)), check=False)
    return i, q


def sample_mod_squares(budget: int, seed: int = 0, corpus: Optional[Sequence[FGModule]] = None) -> List[AdmissibleSquare]:
    """Witnessed squares: ``r`` a twisted split projection, ``f`` a split mono or epi."""
    rng = random.Random(seed)
    corpus = list(corpus or mod_corpus())
    out = []
    for _ in range(max(budget, 0)):
        K1, K2, X = rng.choice(corpus), rng.choice(corpus), rng.choice(corpus)
        if rng.random() < 0.5:
            # f: C -> B = C + K2 split mono
            C = X
            f, fr = _split_inclusion(rng, C, K2)
            B = f.cod
            f_class = MorphismClass(as_section=SectionRetractionWitness(section=f, retraction=fr))
        else:
            # f: C = B + K2 -> B split epi
            B = X
            f, fs = _split_projection(rng, B, K2)
            f_class = MorphismClass(as_retraction=SectionRetractionWitness(section=fs, retraction=f))
        r, s = _split_projection(rng, B, K1)
        sq = module_pullback(f, r)
        out.append(
            AdmissibleSquare(
                sq,
                SectionRetractionWitness(section=s, retraction=r),
                f_class,
                f"A={r.dom!r} B={B!r} C={f.dom!r} f={f_class.kind}",
            )
        )
    return out


def rank_dimension_check(budget: int = 100, seed: int = 0) -> ViolationReport:
    squares = sample_mod_squares(budget, seed)
    return run_dimension_harness(MOD, rank_dimension(), squares, "Mod/rank")


def short_exact_rank_check(f: ModuleHom, r: ModuleHom) -> CheckRecord:
    """``rk(A + C) == rk(A x_B C) + rk(im(r - f))`` on the pullback's exact sequence."""
    sq = module_pullback(f, r)
    A, C = r.dom, f.dom
    diff = ModuleHom(direct_sum(A, C), r.cod, hstack(r.M, -f.M), check=False)
    lhs = rank(A) + rank(C)
    rhs = rank(sq.apex) + image_rank(diff)
    return CheckRecord("pullback-exact-sequence", PASS if lhs == rhs else FAIL, {"apex": repr(sq.apex)}, lhs, rhs)


# -- vector spaces over F_p -------------------------------------------------


def finvect_classification_check(
    p: int, max_dim: int, extra_candidates: Optional[Dict[str, Any]] = None
) -> ViolationReport:
    """Which multiplicative dimension constants the candidate functors realise on ``F_p`` spaces.

    Each candidate is an object map; ``a`` is read off as ``dim T(F_p)`` and
    then checked against multiplicativity and the strong dichotomy.
    """
    cands = {"trivial": lambda V: V, "mod-double": lambda V: direct_sum(V, V)}
    cands.update(extra_candidates or {})
    rep = ViolationReport(f"finvect-classification[F{p}]")
    dim = fp_dimension(p, rig=True)
    for name, T in cands.items():
        a = dim(T(fp_space(p, 1)))
        sd = StrongDimensionData(dim, a)
        for k in range(max_dim + 1):
            V = fp_space(p, k)
            lhs, rhs = dim(T(V)), a * k
            rep.record(f"{name}/multiplicative", lhs == rhs, {"dim_V": k, "a": a}, lhs, rhs)
            res = check_strong_dichotomy(sd, V)
            rep.record(f"{name}/dichotomy", res["branch"] != "violation", {"dim_V": k, **res}, res["value"], 0)
    return rep


def classify_branch(p: int, T, max_dim: int = 3) -> str:
    """The dichotomy branch of a candidate on ``F_p`` spaces of dimension ``1..max_dim``."""
    dim = fp_dimension(p, rig=True)
    a = dim(T(fp_space(p, 1)))
    sd = StrongDimensionData(dim, a)
    branches = {check_strong_dichotomy(sd, fp_space(p, k))["branch"] for k in range(1, max_dim + 1)}
    if "violation" in branches:
        return "violation"
    return branches.pop()


# -- algebras ---------------------------------------------------------------


@dataclass
class FGAlgebra:
    """A ring whose additive group is ``module``.

    ``mult[i][j]`` is the product of generators ``i`` and ``j`` as a
    coefficient vector.
    """

    module: FGModule
    mult: List[List[List[int]]] = field(default_factory=list)

    def product(self, u: Sequence[int], v: Sequence[int]) -> List[int]:
        n = self.module.gens
        out = [0] * n
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        for k, c in enumerate(self.mult[i][j]):
                            out[k] += a * b * c
        return out


def algebra_rank_dimension(alg: FGAlgebra) -> int:
    """Rank of the additive group, after checking the product respects the relations.

    Raises:
        ModuleUsageError: if a relation times a generator is not a relation.
    """
    M = alg.module
    n = M.gens
    if len(alg.mult) != n or any(len(row) != n or any(len(v) != n for v in row) for row in alg.mult):
        raise ModuleUsageError("multiplication table must be gens x gens x gens")
    for rel in M.rels.columns():
        for j in range(n):
            e = [int(i == j) for i in range(n)]
            if not (M.contains_relation(alg.product(rel, e)) and M.contains_relation(alg.product(e, rel))):
                raise ModuleUsageError("multiplication is not bilinear with respect to the relations")
    return rank(M)


def dual_numbers_algebra(alg: FGAlgebra) -> FGAlgebra:
    """``alg[x]/(x^2)`` as generators ``(e_i, x e_i)``."""
    n = alg.module.gens
    M = direct_sum(alg.module, alg.module)
    mult = [[[0] * (2 * n) for _ in range(2 * n)] for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            v = alg.mult[i][j]
            for k in range(n):
                mult[i][j][k] = v[k]
                mult[i][n + j][n + k] = v[k]
                mult[n + i][j][n + k] = v[k]
    return FGAlgebra(M, mult)


def integers_algebra() -> FGAlgebra:
    return FGAlgebra(free_module(1), [[[1]]])
