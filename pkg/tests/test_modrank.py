import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import invariant_factors_by_minors, rank_over_q
from tangentdim.modrank import (
    MOD,
    FGModule,
    ModuleUsageError,
    cardinality,
    classify_branch,
    cyclic_module,
    dim_fp,
    direct_sum,
    finvect_classification_check,
    fp_space,
    free_module,
    mhom,
    module_from_json,
    module_pullback,
    module_pushout,
    rank,
    rank_dimension_check,
    short_exact_rank_check,
)
from tangentdim.monoid import INF
from tangentdim.snf import IntMatrix
from tangentdim.suites import obstruct_endofunctor


def rels_strategy(max_gens=3):
    return st.integers(1, max_gens).flatmap(
        lambda n: st.integers(0, 3).flatmap(
            lambda k: st.lists(st.lists(st.integers(-6, 6), min_size=k, max_size=k), min_size=n, max_size=n).map(
                lambda rows: (n, rows)
            )
        )
    )


def module_of(n, rows):
    return FGModule(n, IntMatrix(rows, n, len(rows[0]))) if rows and rows[0] else FGModule(n)


@settings(max_examples=120, deadline=None)
@given(rels_strategy())
def test_rank_and_cardinality_match_minors(data):
    n, rows = data
    M = module_of(n, rows)
    qr = rank_over_q(rows) if rows and rows[0] else 0
    assert rank(M) == n - qr
    if n - qr:
        assert cardinality(M) == INF
    else:
        assert cardinality(M) == math.prod(d for d in invariant_factors_by_minors(rows) if d)


def elements(orders):
    """Every element of Z/d1 + ... + Z/dk, as reduced tuples."""
    return list(itertools.product(*[range(d) for d in orders]))


def apply(rows, x, orders):
    return tuple(sum(a * b for a, b in zip(row, x)) % d for row, d in zip(rows, orders))


FINITE = [(2,), (3,), (4,), (2, 2), (2, 4), (6,)]


def random_hom(draw, src, tgt):
    """Integer matrices that respect the diagonal relations of the source."""
    rows = []
    for dt in tgt:
        row = []
        for ds in src:
            # a generator of order ds must go to an element killed by ds
            step = dt // math.gcd(dt, ds)
            row.append(step * draw(st.integers(0, dt)))
        rows.append(row)
    return rows


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_finite_pullback_counts_matching_pairs(data):
    oa, ob, oc = (data.draw(st.sampled_from(FINITE)) for _ in range(3))
    rr = random_hom(data.draw, oa, ob)
    fr = random_hom(data.draw, oc, ob)
    A, B, C = cyclic_module(*oa), cyclic_module(*ob), cyclic_module(*oc)
    sq = module_pullback(mhom(C, B, fr), mhom(A, B, rr))
    count = sum(1 for a in elements(oa) for c in elements(oc) if apply(rr, a, ob) == apply(fr, c, ob))
    assert cardinality(sq.apex) == count
    # the square commutes
    assert MOD.equal(MOD.compose(sq.f, sq.pi1), MOD.compose(sq.r, sq.pi0))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_finite_pushout_counts_orbits(data):
    oa, ob, oc = (data.draw(st.sampled_from(FINITE)) for _ in range(3))
    sr = random_hom(data.draw, ob, oa)
    fr = random_hom(data.draw, ob, oc)
    A, B, C = cyclic_module(*oa), cyclic_module(*ob), cyclic_module(*oc)
    po = module_pushout(mhom(B, C, fr), mhom(B, A, sr))
    # |A + C| / |image of b -> (s b, -f b)|
    image = {apply(sr, b, oa) + tuple(-v % d for v, d in zip(apply(fr, b, oc), oc)) for b in elements(ob)}
    assert cardinality(po.apex) * len(image) == math.prod(oa) * math.prod(oc)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=2, max_size=2), st.lists(st.lists(st.integers(-4, 4), min_size=2, max_size=2), min_size=2, max_size=2))
def test_free_pullback_rank_and_exact_sequence(rrows, frows):
    A, C, B = free_module(3), free_module(2), free_module(2)
    r, f = mhom(A, B, rrows), mhom(C, B, frows)
    sq = module_pullback(f, r)
    # kernel of [r | -f] on Z^5
    H = [ra + [-x for x in fa] for ra, fa in zip(rrows, frows)]
    assert rank(sq.apex) == 5 - rank_over_q(H)
    assert short_exact_rank_check(f, r).status == "pass"


def test_pushout_copair():
    B, A = free_module(1), free_module(2)
    s = mhom(B, A, [[1], [0]])
    f = mhom(B, A, [[0], [1]])
    po = module_pushout(f, s)
    assert rank(po.apex) == 3
    u = po.copair(mhom(A, free_module(1), [[1, 1]]), mhom(A, free_module(1), [[1, 1]]))
    assert MOD.equal(MOD.compose(u, po.i0), mhom(A, free_module(1), [[1, 1]]))


def test_fp_dimensions():
    assert dim_fp(fp_space(2, 3), 2) == 3
    assert dim_fp(fp_space(3, 2), 2) == 0
    assert dim_fp(cyclic_module(4, 8), 2) == 2
    assert dim_fp(free_module(2), 5) == 2
    assert dim_fp(direct_sum(fp_space(3, 1), cyclic_module(9)), 3) == 2


def test_rank_harness():
    c = rank_dimension_check(100, 0).counts()
    assert c["pass"] == 100 and c["fail"] == 0


@pytest.mark.parametrize("p", [2, 3])
def test_strong_branches_over_fp(p):
    assert classify_branch(p, lambda V: V) == "a=1"
    assert classify_branch(p, lambda V: direct_sum(V, V)) == "a=2"
    cube = lambda V: direct_sum(V, V, V)
    assert classify_branch(p, cube) == "violation"
    rep = finvect_classification_check(p, 3, {"cube": cube})
    bad = [r for r in rep.records if r.status == "fail"]
    assert bad and all(r.check == "cube/dichotomy" for r in bad)
    # (3 - 1)(3 - 2) dim V with dim V = 1
    assert any(r.witnesses["dim_V"] == 1 and r.lhs == 2 for r in bad)


def test_plus_one_free_rank_is_rejected():
    rep = obstruct_endofunctor("mod", "plus-one-free-rank", "rank")
    assert not rep.ok
    weak = {r.witnesses["dim_X"]: r for r in rep.records if r.check == "weak-equation"}
    assert sorted(weak) == list(range(6))
    for n, r in weak.items():
        # dim T2 V + 2 dim V = (n + 2) + 2n against 3 dim TV = 3(n + 1)
        assert r.status == "fail" and (r.lhs, r.rhs) == (3 * n + 2, 3 * n + 3)
    sym = [r for r in rep.records if r.check == "weak-equation-symbolic"]
    assert sym and sym[0].witnesses["reduces_to"] == "2 = 3"


def test_module_json_and_bad_homs():
    assert rank(module_from_json({"gens": 2})) == 2
    M = module_from_json({"gens": 2, "rels": [[2], [0]]})
    assert cardinality(M) == INF and rank(M) == 1
    with pytest.raises(ModuleUsageError):
        module_from_json({"gens": 2, "rels": [[2]]})
    with pytest.raises(ModuleUsageError):
        mhom(cyclic_module(2), cyclic_module(3), [[1]])
