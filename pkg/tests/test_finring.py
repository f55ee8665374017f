import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import characteristic_by_orders
from tangentdim.finring import (
    RING_1,
    RING_N,
    RING_U,
    VARIANTS,
    DualRing,
    ProductRing,
    RingError,
    all_section_retraction_pairs,
    char_dimension_check,
    char_section_retraction_check,
    characteristic,
    dual_char_check,
    even_subring,
    field4,
    maximal_order_element,
    null_ring,
    product_ring,
    ring_corpus,
    ring_from_json,
    ring_hom,
    zero_ring,
    zmod,
)

CORPUS = ring_corpus()


def oracle_char(R):
    return characteristic_by_orders(list(R.elements), R.add, R.zero)


@pytest.mark.parametrize("R", CORPUS, ids=[R.name for R in CORPUS])
def test_characteristic_matches_exponent_oracle(R):
    assert characteristic(R) == oracle_char(R)
    x = maximal_order_element(R)
    assert R.additive_order(x) == characteristic(R)


@pytest.mark.parametrize("R", [R for R in CORPUS if R.order <= 8], ids=lambda R: R.name)
def test_ring_axioms(R):
    els = list(R.elements)
    for a in els:
        assert R.add(a, R.zero) == a and R.add(a, R.neg(a)) == R.zero
        if R.unital:
            assert R.mul(a, R.one) == a == R.mul(R.one, a)
        for b in els:
            assert R.add(a, b) == R.add(b, a)
            for c in els:
                assert R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c))
                assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))


SMALL = [R for R in CORPUS if R.order <= 8]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL), st.sampled_from(SMALL))
def test_char_of_product_is_lcm(A, B):
    P = ProductRing(A, B)
    assert characteristic(P) == oracle_char(P) == math.lcm(characteristic(A), characteristic(B))


def test_known_characteristics():
    assert characteristic(zero_ring()) == 1
    assert characteristic(field4()) == 2
    assert characteristic(zmod(12)) == 12
    assert characteristic(even_subring(8)) == 4
    assert characteristic(null_ring(4)) == 4
    R = product_ring(zmod(2), zmod(4))
    assert characteristic(R) == 4 and R.additive_order(maximal_order_element(R)) == 4


def test_section_retraction_divisibility_exhaustive():
    corpus = [zero_ring(), zmod(2), zmod(3), zmod(4), zmod(6), product_ring(zmod(2), zmod(2))]
    for cat in (RING_N, RING_1, RING_U):
        pairs = all_section_retraction_pairs(cat, corpus)
        assert pairs
        for s, r in pairs:
            assert char_section_retraction_check(s, r).ok
            assert characteristic(s.cod) % characteristic(s.dom) == 0


def test_section_retraction_check_rejects_non_pairs():
    Z4, Z2 = zmod(4), zmod(2)
    mod2 = ring_hom(Z4, Z2, lambda a: a % 2, unital=True)
    zero = ring_hom(Z2, Z4, lambda a: 0)
    with pytest.raises(RingError):
        char_section_retraction_check(zero, mod2)


def test_reduction_mod_two_is_neither():
    Z4, Z2 = zmod(4), zmod(2)
    mod2 = ring_hom(Z4, Z2, lambda a: a % 2, unital=True)
    for cat in (RING_N, RING_1, RING_U):
        cls = cat.classify(mod2)
        assert cls.decided and not cls.is_section and not cls.is_retraction


def test_unit_preservation_is_enforced():
    Z2 = zmod(2)
    Z22 = product_ring(Z2, Z2)
    f = ring_hom(Z2, Z22, lambda a: (a, 0))
    assert f in RING_1.homs(Z2, Z22) or any(RING_1.equal(f, g) for g in RING_1.homs(Z2, Z22))
    assert not any(RING_U.equal(f, g) for g in RING_U.homs(Z2, Z22))
    with pytest.raises(RingError):
        ring_hom(Z2, Z22, lambda a: (a, 0), unital=True)
    assert RING_U.homs(null_ring(2), Z2) == []
    assert RING_N.homs(null_ring(2), Z2)


def test_dual_numbers_keep_the_characteristic():
    assert dual_char_check().ok
    for R in SMALL:
        assert oracle_char(DualRing(R)) == oracle_char(R)


@pytest.mark.parametrize("variant", VARIANTS)
def test_char_harness(variant):
    c = char_dimension_check(variant, 100, 0).counts()
    assert c["pass"] == 100 and c["fail"] == 0


def test_ring_json():
    R = ring_from_json(
        {"add": {"elements": [0, 1], "table": [[0, 1], [1, 0]], "id": 0}, "mul": [[0, 0], [0, 1]], "one": 1}
    )
    assert characteristic(R) == 2 and R.unital
    with pytest.raises(RingError):
        ring_from_json({"add": {"elements": [0, 1], "table": [[0, 1]]}, "mul": [[0, 0], [0, 1]]})
