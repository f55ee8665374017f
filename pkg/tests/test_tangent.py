"""Tangent axioms, universality, and a mutation suite of single-map corruptions."""

import pytest

from tangentdim import fingrp, finring, finset, modrank, registry
from tangentdim.catcore import FinMap
from tangentdim.modrank import MOD, ModuleHom
from tangentdim.report import PASS
from tangentdim.snf import IntMatrix, block_diag
from tangentdim.suites import check_tangent
from tangentdim.tangent import (
    check_differential_bundle,
    check_diffbun_equations,
    check_tangent_axioms,
    check_universality,
    check_weak_equation,
    trivial_structure,
    weak_equation_proof_squares,
)


def detects(cat, ts, objects, morphisms=(), depth=1):
    """Whether the axiom or universality checks find a failure."""
    if not check_tangent_axioms(cat, ts, objects, morphisms, depth).ok:
        return True
    return any(not check_universality(cat, ts, X, depth).ok for X in objects)


@pytest.mark.parametrize("cat", registry.trivial_categories())
def test_trivial_structure_everywhere(cat):
    assert check_tangent(registry.get_structure("trivial", cat).tag, cat, depth=2).ok


def test_mod_double_and_plus_one_at_depth_two():
    corpus = modrank.mod_corpus()
    assert not detects(MOD, modrank.mod_tangent(), corpus, modrank.mod_morphisms(), depth=2)
    # V + Z: the natural maps exist but universality fails
    cand = modrank.plus_one_free_rank()
    assert check_tangent_axioms(MOD, cand, corpus[:3], [], 1).ok
    assert not check_universality(MOD, cand, modrank.free_module(1), 1).ok


def test_weak_equation_follows_from_two_dimension_squares():
    ts, dim = modrank.mod_tangent(), modrank.rank_dimension()
    for V in modrank.mod_corpus():
        pb, uni = weak_equation_proof_squares(MOD, ts, dim, V)
        assert pb.status == uni.status == PASS
        # pullback power: dim T2X + dim X == dim TX + dim TX
        d0, d1 = pb.witnesses["dim_B"], pb.witnesses["dim_A"]
        d2 = uni.witnesses["dim_A"]
        assert pb.witnesses["dim_P"] + d0 == 2 * d1
        # universality: dim T2X + dim TX == dim TTX + dim X
        assert uni.witnesses["dim_P"] + uni.witnesses["dim_B"] == d2 + uni.witnesses["dim_C"]
        w = check_weak_equation(ts, dim, V)
        assert w.status == PASS and w.lhs == d2 + 2 * d0 == 3 * d1


def test_group_differential_bundle():
    ts = fingrp.grp_tangent()
    M, A = fingrp.cyclic(2), fingrp.cyclic(3)
    db = fingrp.grp_diffbun(M, A, ts)
    assert check_differential_bundle(fingrp.FINGRP, ts, db).ok
    assert check_diffbun_equations(ts, fingrp.cardinality_mul_dimension(), db).ok


# -- mutation suite ---------------------------------------------------------


def _neg(V):
    return ModuleHom(V, V, IntMatrix.identity(V.gens).scale(-1), check=False)


def _mod_mutants():
    ts = modrank.mod_tangent()
    c = MOD.compose

    def diag(V):
        n = V.gens
        return ModuleHom(V, ts.T(V), IntMatrix([[int(i % n == j) for j in range(n)] for i in range(2 * n)], 2 * n, n), check=False)

    def plus_first(V):
        return c(ts.T2(V).pi0, MOD.identity(ts.T2(V).apex))

    def plus_with_base(V):
        sq = ts.T2(V)
        n = V.gens
        h = ts.plus(V)
        # add the base point into the fibre coordinate as well
        M = h.M.copy()
        for i in range(n):
            for j in range(M.ncols):
                M.rows[n + i][j] += h.M.rows[i][j]
        return ModuleHom(sq.apex, ts.T(V), M, check=False)

    def zero_lift(V):
        return c(ts.zero(ts.T(V)), c(ts.zero(V), ts.p(V)))

    def outer_swap(V):
        n = V.gens
        W = ts.T(V, 2)
        P = IntMatrix.zeros(4 * n, 4 * n)
        for blk, tgt in enumerate([3, 1, 2, 0]):
            for i in range(n):
                P.rows[tgt * n + i][blk * n + i] = 1
        return ModuleHom(W, W, P, check=False)

    def half_T(f):
        return ModuleHom(ts.T(f.dom), ts.T(f.cod), block_diag(f.M, IntMatrix.zeros(f.cod.gens, f.dom.gens)), check=False)

    return ts, [
        ("mod/p-negated", ts.mutate(p=lambda V: c(_neg(V), ts.p(V)))),
        ("mod/zero-negated", ts.mutate(zero=lambda V: c(ts.zero(V), _neg(V)))),
        ("mod/zero-diagonal", ts.mutate(zero=diag)),
        ("mod/plus-first-projection", ts.mutate(plus=plus_first)),
        ("mod/plus-negated", ts.mutate(plus=lambda V: c(_neg(ts.T(V)), ts.plus(V)))),
        ("mod/plus-leaks-base", ts.mutate(plus=plus_with_base)),
        ("mod/lift-precomposed-negation", ts.mutate(lift=lambda V: c(ts.lift(V), _neg(ts.T(V))))),
        ("mod/lift-zero", ts.mutate(lift=zero_lift)),
        ("mod/flip-identity", ts.mutate(flip=lambda V: MOD.identity(ts.T(V, 2)))),
        ("mod/flip-negated", ts.mutate(flip=lambda V: c(_neg(ts.T(V, 2)), ts.flip(V)))),
        ("mod/flip-outer-swap", ts.mutate(flip=outer_swap)),
        ("mod/T-drops-fibre", ts.mutate(T_mor=half_T)),
    ]


def _grp_mutants():
    ts = fingrp.grp_tangent()
    G = fingrp.FINGRP

    def trivial_p(X):
        return FinMap(ts.T(X), X, lambda x: X.one)

    def zero_with_class(X):
        A = fingrp.abelianization(X)
        return FinMap(X, ts.T(X), lambda g: (g, A.rep[g]))

    def plus_divides(X):
        sq = ts.T2(X)
        A = fingrp.abelianization(X)
        return FinMap(sq.apex, ts.T(X), lambda x: (x[0][0], A.mul(x[0][1], A.inv(x[1][1]))))

    def zero_lift(X):
        return G.compose(ts.zero(ts.T(X)), G.compose(ts.zero(X), ts.p(X)))

    return ts, [
        ("grp/flip-identity", ts.mutate(flip=lambda X: G.identity(ts.T(X, 2)))),
        ("grp/lift-zero", ts.mutate(lift=zero_lift)),
        ("grp/p-trivial", ts.mutate(p=trivial_p)),
        ("grp/zero-with-class", ts.mutate(zero=zero_with_class)),
        ("grp/plus-divides", ts.mutate(plus=plus_divides)),
    ]


def _ring_mutants():
    ts = finring.dual_numbers_tangent()
    Rc = finring.RING_U

    def zero_lift(R):
        z = R.zero
        return FinMap(ts.T(R), ts.T(R, 2), lambda u: ((u[0], z), (z, z)))

    def plus_first(R):
        return ts.T2(R).pi0

    def T_drops(f):
        z = f.cod.zero
        return FinMap(ts.T(f.dom), ts.T(f.cod), lambda u: (f(u[0]), z))

    return ts, [
        ("ring/flip-identity", ts.mutate(flip=lambda R: Rc.identity(ts.T(R, 2)))),
        ("ring/lift-zero", ts.mutate(lift=zero_lift)),
        ("ring/plus-first-projection", ts.mutate(plus=plus_first)),
        ("ring/T-drops-fibre", ts.mutate(T_mor=T_drops)),
    ]


def _finset_mutants():
    ts = trivial_structure(finset.FINSET_OP)

    def swap(X):
        els = X.elements
        table = {x: x for x in els}
        if len(els) >= 2:
            table[els[0]], table[els[1]] = els[1], els[0]
        return FinMap(X, X, table=table)

    return ts, [
        ("finset-op/flip-swap", ts.mutate(flip=swap)),
        ("finset-op/lift-swap", ts.mutate(lift=swap)),
        ("finset-op/p-swap", ts.mutate(p=swap)),
    ]


def _mutant_cases():
    cases = []
    _, ms = _mod_mutants()
    cases += [(n, MOD, m, modrank.mod_corpus(), modrank.mod_morphisms()) for n, m in ms]
    _, ms = _grp_mutants()
    # Z/3 is needed: on groups whose abelianization has exponent 2, a b^-1 == a b
    gcorpus = [fingrp.cyclic(2), fingrp.cyclic(3), fingrp.symmetric3()]
    cases += [(n, fingrp.FINGRP, m, gcorpus, fingrp.grp_morphisms()) for n, m in ms]
    _, ms = _ring_mutants()
    rcorpus = finring.ring_tangent_corpus() + [finring.zmod(3)]
    cases += [(n, finring.RING_U, m, rcorpus, finring.ring_morphisms()) for n, m in ms]
    _, ms = _finset_mutants()
    fcorpus = finset.finset_corpus(3)
    cases += [(n, finset.FINSET_OP, m, fcorpus, []) for n, m in ms]
    return cases


MUTANTS = _mutant_cases()


def test_mutation_suite_is_large_enough():
    assert len(MUTANTS) >= 20
    assert len({name for name, *_ in MUTANTS}) == len(MUTANTS)


@pytest.mark.parametrize("name,cat,ts,objects,morphisms", MUTANTS, ids=[m[0] for m in MUTANTS])
def test_mutant_is_caught(name, cat, ts, objects, morphisms):
    assert detects(cat, ts, objects, morphisms)


def test_unmutated_baselines_pass():
    assert not detects(MOD, _mod_mutants()[0], modrank.mod_corpus(), modrank.mod_morphisms())
    assert not detects(fingrp.FINGRP, _grp_mutants()[0], [fingrp.cyclic(2), fingrp.symmetric3()], fingrp.grp_morphisms())
    rc = finring.ring_tangent_corpus() + [finring.zmod(3)]
    assert not detects(finring.RING_U, _ring_mutants()[0], rc, finring.ring_morphisms())
    assert not detects(finset.FINSET_OP, _finset_mutants()[0], finset.finset_corpus(3))
