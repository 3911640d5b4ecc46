import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cmimic import instances
from cmimic.graph import (
    TOP,
    attach_terminal_gadget,
    boundary,
    build_graph,
    conductance,
    connected_components,
    contract_edges,
    graph_conductance_exact,
    max_flow_bounded,
    sparse_certificate,
    terminal_gadget,
    thresholded_mincut,
)
from cmimic.oracle import tc_equivalent

from conftest import brute_mincut


def test_build_graph_clamps_weights():
    G = build_graph(2, [(1, 2, 5)], {1, 2}, 3)
    assert G.m == 3 and len(G.edges) == 3


def test_build_graph_counts(P3, K4):
    assert P3.m == 2
    assert build_graph(4, [(i, j) for i in range(1, 5) for j in range(i + 1, 5)], {1, 2}, 2).m == 6


@pytest.mark.parametrize("edges,terms", [([(1, 4)], [1]), ([(1, 2)], [7])])
def test_build_graph_rejects_bad_ids(edges, terms):
    with pytest.raises(ValueError):
        build_graph(3, edges, terms, 1)


def test_gadget_on_star_center():
    G = build_graph(5, [(1, i) for i in range(2, 6)], [1], 2)
    H, rename = terminal_gadget(G)
    assert set(rename) == {1}
    r2 = rename[1]
    assert H.terminals == {r2} and H.degree(r2) == 2


def test_gadget_leaves_low_degree_terminals(P3):
    H = attach_terminal_gadget(P3)
    assert H.n == P3.n and H.terminals == P3.terminals


def test_gadget_equivalent_on_k4():
    G = build_graph(4, [(i, j) for i in range(1, 5) for j in range(i + 1, 5)], [1, 2], 2)
    H, rename = terminal_gadget(G)
    assert all(H.degree(t) <= 2 for t in H.terminals)
    # with the renaming, t' plays the role of t
    for left in ([1], [2]):
        right = [2] if left == [1] else [1]
        a = thresholded_mincut(G, left, right, 2)
        b = thresholded_mincut(H, [rename.get(x, x) for x in left], [rename.get(x, x) for x in right], 2)
        assert a == b


def test_contract_path_edge(P3):
    H = contract_edges(P3, [0])
    assert H.n == 2 and H.m == 1
    assert H.find(1) == H.find(2) and H.find(1) in H.terminals
    assert P3.n == 3  # value semantics


def test_contract_all_of_k4(K4):
    H = contract_edges(K4, list(K4.edges))
    assert H.n == 1 and H.m == 0


def test_contract_unknown_edge(P3):
    with pytest.raises(KeyError):
        contract_edges(P3, [99])


def test_contract_never_lowers_mincut(C4):
    before = thresholded_mincut(C4, [1], [3], 5)
    for e in C4.edges:
        assert thresholded_mincut(contract_edges(C4, [e]), [1], [3], 5) >= before


def test_max_flow_examples(P3, K4, C4):
    r = max_flow_bounded(P3, [1], [3], 2)
    assert r.value == 1 and r.witness.value == 1
    assert max_flow_bounded(K4, [1], [2], 2).is_top
    assert max_flow_bounded(C4, [1], [3], 3).value == 2
    r = max_flow_bounded(P3, [1, 2], [2], 2)
    assert r.value is TOP


def test_max_flow_residual_sink_side(P3):
    r = max_flow_bounded(P3, [1], [3], 2)
    # 2 -> 3 is saturated, so only 3 can still reach the sink
    assert r.residual_sink_side == {3}
    assert r.witness.side1 == {1}


def test_thresholded_examples(P3, DUMBBELL):
    assert thresholded_mincut(P3, [1], [3], 3) == 1
    assert thresholded_mincut(instances.complete(5), [1], [2], 2) == 2
    assert thresholded_mincut(DUMBBELL, [1], [6], 3) == 1


def test_sparse_certificate_examples(C4):
    K5 = instances.complete(5)
    H = sparse_certificate(K5, 2)
    assert H.m <= 8
    for r in range(1, 5):
        for S in itertools.combinations(range(1, 6), r):
            rest = set(range(1, 6)) - set(S)
            assert thresholded_mincut(K5, S, rest, 2) == thresholded_mincut(H, S, rest, 2)
    P5 = instances.path(5)
    assert sparse_certificate(P5, 3).edges == P5.edges
    H = sparse_certificate(C4, 1)
    assert H.m <= 3 and len(connected_components(H)) == 1


def test_conductance_examples(C4, DUMBBELL):
    assert conductance(C4, {1, 2}) == Fraction(2, 4)
    assert graph_conductance_exact(C4) == Fraction(1, 2)
    assert conductance(DUMBBELL, {1, 2, 3}) == Fraction(1, 7)


def test_conductance_size_cap():
    with pytest.raises(ValueError):
        graph_conductance_exact(instances.path(19))


def test_boundary_and_components(P3, C4, DUMBBELL):
    assert boundary(P3, {2}) == {0, 1}
    assert boundary(C4, {1, 3}) == set(C4.edges)
    bridge = max(DUMBBELL.edges)
    comps = connected_components(DUMBBELL.without_edges([bridge]))
    assert comps == [frozenset({1, 2, 3}), frozenset({4, 5, 6})]


def test_loops_ignored_in_cuts_counted_in_volume():
    G = build_graph(3, [(1, 2), (1, 2), (2, 3)], [1, 3], 2)
    H = contract_edges(G, [0])
    assert H.m == 1 and boundary(H, {1}) == {2}
    assert H.volume_degrees()[H.find(1)] == 5


@given(st.integers(0, 10**6))
def test_weight_clamp_preserves_thresholded_cuts(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 8)
    c = rng.randint(1, 4)
    wedges = [(rng.randint(1, n), rng.randint(1, n), rng.randint(1, 6)) for _ in range(rng.randint(1, 12))]
    wedges = [e for e in wedges if e[0] != e[1]]
    G = build_graph(n, wedges, [], c)
    a, b = rng.sample(range(1, n + 1), 2)
    # weighted brute force on the original weights
    best = float("inf")
    others = [v for v in range(1, n + 1) if v not in (a, b)]
    for r in range(len(others) + 1):
        for extra in itertools.combinations(others, r):
            S = {a, *extra}
            best = min(best, sum(w for u, v, w in wedges if (u in S) != (v in S)))
    assert thresholded_mincut(G, [a], [b], c) == min(c, best)


@given(st.integers(0, 10**6))
def test_witness_survives_in_original_graph(seed):
    rng = random.Random(seed)
    G = instances.random_instance(rng, n_max=9, m_max=16)
    E_hat = rng.sample(sorted(G.edges), rng.randint(0, G.m // 2))
    H = contract_edges(G, E_hat)
    T = sorted(G.terminals)
    a, b = T[0], T[1]
    if H.find(a) == H.find(b):
        return
    r = max_flow_bounded(H, [a], [b], G.c)
    if r.is_top:
        return
    # the same edge ids separate a from b in G
    G2 = G.without_edges(r.witness.edges)
    comp = next(K for K in connected_components(G2) if a in K)
    assert b not in comp
    assert r.value == brute_mincut(H, [a], [b])
