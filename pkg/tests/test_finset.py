import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from tangentdim.finset import (
    FINSET,
    GRPH,
    LoopedGraph,
    cartesian_structure,
    complete_graph,
    fin_fn,
    finsetop_dimension_check,
    graph_dimension_check,
    matches_trivial,
    poly_counterexample,
    search_cartesian_tangent_finsetop,
    set_pushout,
    srange,
    SingletonData,
)


def components(na, nc, pairs):
    """Connected components of the gluing graph, by plain graph search."""
    adj = {("a", i): set() for i in range(na)}
    adj.update({("c", j): set() for j in range(nc)})
    for a, c in pairs:
        adj[("a", a)].add(("c", c))
        adj[("c", c)].add(("a", a))
    seen, count = set(), 0
    for v in adj:
        if v in seen:
            continue
        count += 1
        stack = [v]
        while stack:
            w = stack.pop()
            if w not in seen:
                seen.add(w)
                stack.extend(adj[w])
    return count


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_pushout_size_matches_component_count(data):
    nb = data.draw(st.integers(0, 3))
    na, nc = data.draw(st.integers(1, 4)), data.draw(st.integers(1, 4))
    s = fin_fn(srange(nb), srange(na), data.draw(st.lists(st.integers(0, na - 1), min_size=nb, max_size=nb)))
    f = fin_fn(srange(nb), srange(nc), data.draw(st.lists(st.integers(0, nc - 1), min_size=nb, max_size=nb)))
    po = set_pushout(f, s)
    assert len(po.apex) == components(na, nc, [(s(b), f(b)) for b in range(nb)])
    for b in range(nb):
        assert po.i0(s(b)) == po.i1(f(b))
    if s.is_injective():
        assert po.flags == []
    else:
        assert po.flags == ["s-not-injective"]


def test_pushout_copair_is_the_unique_cocone_map():
    s = fin_fn(srange(1), srange(2), [0])
    f = fin_fn(srange(1), srange(2), [1])
    po = FINSET.pushout(f, s)
    Q = srange(3)
    u = po.copair(fin_fn(srange(2), Q, [0, 1]), fin_fn(srange(2), Q, [2, 0]))
    assert [u(po.i0(a)) for a in range(2)] == [0, 1]
    assert [u(po.i1(c)) for c in range(2)] == [2, 0]


def test_dimension_harnesses():
    for rep in (finsetop_dimension_check(100, 0), graph_dimension_check(100, 0)):
        c = rep.counts()
        assert c["pass"] == 100 and c["fail"] == 0


def test_graph_homs_preserve_edges():
    K2, P = complete_graph(2), LoopedGraph([0, 1])
    # a discrete graph maps anywhere; K2 cannot be split apart
    assert len(GRPH.homs(P, K2)) == 4
    assert len(GRPH.homs(K2, P)) == 2


def test_poly_counterexample_numbers():
    rep = poly_counterexample()
    first = rep.records[0]
    assert first.check == "sum-of-monomials"
    assert (first.lhs, first.rhs) == (3, 4)
    assert first.status == "fail"
    assert not first.witnesses["r_has_section"] and not first.witnesses["f_has_section"]
    assert [r.status for r in rep.records[1:]] == ["pass", "pass"]


def test_search_finds_only_the_trivial_structure():
    for max_card in (1, 2, 3):
        res = search_cartesian_tangent_finsetop(max_card)
        assert len(res.found) == 1 and res.found[0].k == 1
        assert res.report.ok
    res = search_cartesian_tangent_finsetop(3)
    assert res.rejected[3]["stage"] == "dimension"
    assert res.rejected[2]["stage"] == "additive-bundle"


def test_two_element_case_fails_at_the_unit_laws():
    res = search_cartesian_tangent_finsetop(2)
    diag = {d["e"]: d for d in res.rejected[2]["diagnostics"]}
    assert diag[0]["forced"] == {"unit-left": {"+(1)": "c"}, "unit-right": {"+(1)": "b"}}
    # the two forced values disagree for every base point
    for d in diag.values():
        left, right = d["forced"]["unit-left"], d["forced"]["unit-right"]
        assert left.keys() == right.keys() and all(left[k] != right[k] for k in left)


def test_matches_trivial_distinguishes_structures():
    objects = [srange(n) for n in range(3)]
    triv = SingletonData(1, 0, ((0, 0),), (0,), ((0, 0),))
    assert matches_trivial(cartesian_structure(triv), objects)
    # a two-point T(*) is not isomorphic to the identity functor
    other = SingletonData(2, 0, ((0, 0), (0, 1)), (0, 0, 0, 0), tuple(itertools.product(range(2), range(2))))
    assert not matches_trivial(cartesian_structure(other), objects)
