import pytest
from hypothesis import given
from hypothesis import strategies as st

from tangentdim.monoid import (
    INF,
    INT_RIG,
    LCM,
    MONOIDS,
    NAT_ADD,
    NAT_MAX,
    NAT_MUL,
    SEQ_ADD,
    MonoidUsageError,
    check_monoid_laws,
    combine,
    get_monoid,
    rig_mul,
    seq,
)

natinf = st.one_of(st.integers(0, 50), st.just(INF))
posinf = st.one_of(st.integers(1, 60), st.just(INF))
seqs = st.lists(natinf, max_size=4).map(seq)

CARRIERS = {
    "nat-add": natinf,
    "nat-mul": natinf,
    "nat-max": natinf,
    "lcm": posinf,
    "seq-add": seqs,
    "int-rig": st.integers(-30, 30),
}


@pytest.mark.parametrize("tag", sorted(CARRIERS))
@given(data=st.data())
def test_laws_hold_on_random_triples(tag, data):
    m = get_monoid(tag)
    xs = [data.draw(CARRIERS[tag]) for _ in range(3)]
    assert check_monoid_laws(m, xs).ok


def test_infinity_absorbs_zero_in_multiplication():
    assert combine(NAT_MUL, 0, INF) is INF
    assert combine(NAT_ADD, 3, INF) is INF
    assert combine(NAT_MAX, INF, 0) is INF


def test_lcm_rejects_zero():
    with pytest.raises(MonoidUsageError):
        combine(LCM, 0, 4)
    assert combine(LCM, 4, 6) == 12
    assert combine(LCM, 4, INF) is INF


def test_sequences_normalise_trailing_zeros():
    assert seq([1, 0, 0]) == (1,)
    assert combine(SEQ_ADD, (1, 1), (0, 2, 1)) == (1, 3, 1)
    with pytest.raises(MonoidUsageError):
        combine(SEQ_ADD, (1, 0), ())


@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20))
def test_int_rig_distributes(a, b, c):
    assert rig_mul(INT_RIG, a, b + c) == rig_mul(INT_RIG, a, b) + rig_mul(INT_RIG, a, c)


def test_rig_mul_needs_rig():
    with pytest.raises(MonoidUsageError):
        rig_mul(NAT_ADD, 2, 3)


def test_values_outside_carrier_are_rejected():
    with pytest.raises(MonoidUsageError):
        combine(NAT_ADD, -1, 2)
    with pytest.raises(MonoidUsageError):
        combine(NAT_ADD, True, 2)
    with pytest.raises(MonoidUsageError):
        get_monoid("nope")


def test_broken_monoid_reports_witness():
    from tangentdim.monoid import MonoidSpec, is_nat

    sub = MonoidSpec("minus", lambda a, b: abs(a - b), 0, is_nat)
    rep = check_monoid_laws(sub, [1, 2, 3])
    assert not rep.ok
    assert rep.first_failure().check == "associativity"


def test_every_registered_tag_resolves():
    for tag, m in MONOIDS.items():
        assert get_monoid(tag) is m
