import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tangentdim.catcore import (
    CospanSquare,
    MorphismClass,
    NotACone,
    SectionRetractionWitness,
    classify_morphism,
    is_pullback,
    is_pullback_by_enumeration,
    mediate,
    sample_admissible_squares,
    transport_dimension,
    verify_dimension_on_square,
)
from tangentdim.finset import (
    FINSET,
    FINSET_OP,
    GRPH,
    GRPH_OP,
    cardinality_dimension,
    fin_fn,
    graph_corpus,
    srange,
    vertex_functor,
)
from tangentdim.report import NA, PASS



small_map = st.integers(0, 3).flatmap(
    lambda n: st.integers(1, 3).flatmap(lambda m: st.lists(st.integers(0, m - 1), min_size=n, max_size=n).map(lambda im: fin_fn(srange(n), srange(m), im)))
)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_finset_pullback_agrees_with_enumeration(data):
    m = data.draw(st.integers(1, 3))
    na, nc = data.draw(st.integers(0, 3)), data.draw(st.integers(0, 3))
    r = fin_fn(srange(na), srange(m), data.draw(st.lists(st.integers(0, m - 1), min_size=na, max_size=na)))
    f = fin_fn(srange(nc), srange(m), data.draw(st.lists(st.integers(0, m - 1), min_size=nc, max_size=nc)))
    sq = FINSET.pullback(f, r)
    # the pullback has exactly the matching pairs
    expect = sorted((a, c) for a in range(na) for c in range(nc) if r(a) == f(c))
    assert sorted(sq.apex.elements) == expect
    assert is_pullback(FINSET, sq)
    assert is_pullback_by_enumeration(FINSET, sq, [srange(k) for k in range(3)])


def test_non_pullback_is_detected_both_ways():
    f = fin_fn(srange(1), srange(1), [0])
    sq = FINSET.pullback(f, f)
    # doubling the apex keeps the square commuting but breaks uniqueness
    P2 = srange(2)
    bad = CospanSquare(f, f, P2, fin_fn(P2, srange(1), [0, 0]), fin_fn(P2, srange(1), [0, 0]))
    assert is_pullback(FINSET, sq)
    assert not is_pullback(FINSET, bad)
    assert not is_pullback_by_enumeration(FINSET, bad, [srange(1)])


def test_mediate_through_non_canonical_square():
    f = fin_fn(srange(2), srange(1), [0, 0])
    sq = FINSET.pullback(f, f)
    swap = fin_fn(sq.apex, sq.apex, {p: (p[1], p[0]) for p in sq.apex.elements})
    other = CospanSquare(f, f, sq.apex, swap.then(sq.pi0), swap.then(sq.pi1))
    a = fin_fn(srange(1), srange(2), [0])
    c = fin_fn(srange(1), srange(2), [1])
    u = mediate(FINSET, other, a, c)
    assert other.pi0(u(0)) == 0 and other.pi1(u(0)) == 1
    ident = fin_fn(srange(2), srange(2), [0, 1])
    with pytest.raises(NotACone):
        mediate(FINSET, FINSET.pullback(ident, ident), a, c)


@settings(max_examples=60, deadline=None)
@given(small_map)
def test_classification_matches_injective_surjective(f):
    cls = classify_morphism(FINSET, f)
    nonempty_or_empty_dom = len(f.dom) > 0 or len(f.cod) == 0
    assert cls.is_section == (f.is_injective() and nonempty_or_empty_dom)
    assert cls.is_retraction == f.is_surjective()
    op = FINSET_OP.classify(f)
    # reading backwards swaps the roles
    assert op.is_section == cls.is_retraction and op.is_retraction == cls.is_section
    for w in (op.as_section, op.as_retraction):
        if w is not None:
            assert w.verify(FINSET_OP)


def test_dimension_check_gates_on_witnesses():
    dim = cardinality_dimension()
    r = fin_fn(srange(1), srange(2), [0])  # injective: a FinSet^op retraction
    f = fin_fn(srange(1), srange(2), [1])
    sq = FINSET_OP.pullback(f, r)
    back = fin_fn(srange(2), srange(1), [0, 0])
    rw = SectionRetractionWitness(section=back, retraction=r)
    assert rw.verify(FINSET_OP)
    fc = FINSET_OP.classify(f)
    rec = verify_dimension_on_square(FINSET_OP, dim, sq, rw, fc)
    # pushout of two 2-element sets over a point: 3 + 1 == 2 + 2
    assert rec.status == PASS and rec.lhs == rec.rhs == 4
    assert rec.witnesses["dim_P"] == 3
    assert verify_dimension_on_square(FINSET_OP, dim, sq, None, fc).status == NA
    assert verify_dimension_on_square(FINSET_OP, dim, sq, rw, MorphismClass(decided=False)).status == NA
    wrong = SectionRetractionWitness(section=fin_fn(srange(2), srange(1), [0, 0]), retraction=f)
    assert verify_dimension_on_square(FINSET_OP, dim, sq, wrong, fc).status == NA


def test_sampled_squares_are_admissible():
    squares = sample_admissible_squares(FINSET_OP, [srange(n) for n in range(4)], 40, seed=3)
    assert len(squares) == 40
    for s in squares:
        assert s.r_witness.verify(FINSET_OP)
        assert s.f_class.is_section or s.f_class.is_retraction
        assert is_pullback(FINSET_OP, s.square)
    again = sample_admissible_squares(FINSET_OP, [srange(n) for n in range(4)], 40, seed=3)
    assert [s.label for s in again] == [s.label for s in squares]


def test_transported_dimension_records_no_warnings_on_preserved_squares():
    squares = sample_admissible_squares(GRPH_OP, graph_corpus(), 20, seed=1)
    dim = transport_dimension(vertex_functor(), cardinality_dimension(), [s.square for s in squares])
    assert dim.warnings == []
    assert dim(graph_corpus()[5]) == 3


def test_opposite_swaps_domain_and_codomain():
    f = fin_fn(srange(2), srange(3), [0, 2])
    assert FINSET_OP.dom(f) == srange(3) and FINSET_OP.cod(f) == srange(2)
    g = fin_fn(srange(3), srange(1), [0, 0, 0])
    assert FINSET_OP.equal(FINSET_OP.compose(f, g), FINSET.compose(g, f))
    assert FINSET_OP.homs(srange(1), srange(2)) is not None
    assert GRPH.homs(graph_corpus()[1], graph_corpus()[2])
