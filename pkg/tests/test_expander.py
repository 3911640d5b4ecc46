import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from cmimic import instances
from cmimic.expander import (
    build_cut_index,
    complete_min_cut_family,
    contract_edge_and_update,
    efficient_poly_sized,
    enumerate_small_cuts,
    expander_decompose,
    is_contractible,
    default_phi,
    phi_sparsify,
    resolve_phi,
)
from cmimic.graph import build_graph, connected_components, contract_edges, graph_conductance_exact
from cmimic.oracle import small_cuts_bruteforce, tc_equivalent


def test_decompose_dumbbell(DUMBBELL):
    dec = expander_decompose(DUMBBELL, Fraction(1, 4))
    assert dec.pieces == [frozenset({1, 2, 3}), frozenset({4, 5, 6})]
    assert len(dec.inter_cluster_edges) == 1 and all(dec.verified)


def test_decompose_k5_single_piece():
    K5 = instances.complete(5)
    dec = expander_decompose(K5, Fraction(1, 4))
    assert dec.pieces == [frozenset(range(1, 6))] and not dec.inter_cluster_edges
    assert graph_conductance_exact(K5) == Fraction(3, 4)


def test_decompose_flags_large_pieces():
    G = instances.complete(20)
    dec = expander_decompose(G, Fraction(1, 4))
    assert len(dec.pieces) == 1 and dec.unverified == dec.pieces


def test_small_cut_examples(P5, C4, K4):
    cuts = enumerate_small_cuts(P5, 1, 5)
    assert sorted(w.key() for w in cuts) == [(0,), (1,), (2,), (3,)]
    assert {w.edges for w in enumerate_small_cuts(C4, 2, 2)} == small_cuts_bruteforce(C4, 2, 2)
    assert enumerate_small_cuts(K4, 2, 4) == []


def test_cut_index_path(P5):
    cuts = enumerate_small_cuts(P5, 1, 4)
    idx = build_cut_index(P5, P5.terminals, 1, cuts)
    assert len(idx.P) == 1 and len(idx.C) == 4 and set(idx.E0) == {0, 1, 2, 3}
    G = P5
    assert is_contractible(idx, 1)
    for e in (0, 1, 2):
        G, done = contract_edge_and_update(G, idx, e)
        assert done
    assert not is_contractible(idx, 3)
    G, done = contract_edge_and_update(G, idx, 3)
    assert not done and G.m == 1


def test_cut_index_empty_and_star(K4, STAR5):
    assert build_cut_index(K4, K4.terminals, 2, enumerate_small_cuts(K4, 2, 3)).P == {}
    cuts, _ = complete_min_cut_family(STAR5, 2)
    idx = build_cut_index(STAR5, STAR5.terminals, 2, cuts)
    assert len(idx.P) == 7
    singles = [p for p in idx.P if len(p) in (1, 3)]
    assert len(singles) == 4


def test_edge_in_no_cut_is_contractible(P5):
    idx = build_cut_index(P5, P5.terminals, 1, [])
    assert is_contractible(idx, 0)


def test_phi_sparsify_examples(P5, K4):
    res = phi_sparsify(P5, P5.terminals, 1)
    assert res.size == 1 and res.graph.n == 2
    G = build_graph(4, [(i, j) for i in range(1, 5) for j in range(i + 1, 5)], [1, 2], 2)
    res = phi_sparsify(G, [1, 2], 2)
    # mincut(1, 2) = 3 > c, so everything merges
    assert tc_equivalent(G, res.graph, [1, 2], 2) and res.graph.n == 1
    rng = random.Random(11)
    E = [(i, j) for i in range(1, 13) for j in range(i + 1, 13) if rng.random() < 0.5]
    G = build_graph(12, E, rng.sample(range(1, 13), 4), 2)
    assert tc_equivalent(G, phi_sparsify(G).graph, G.terminals, 2)


def test_efficient_examples():
    G = build_graph(3, [(1, 2)], [1, 2, 3], 1)
    res = efficient_poly_sized(G)
    assert len(res.info["passes"]) == 1 and res.size == 1
    D = instances.dumbbell(3, c=1)
    res = efficient_poly_sized(D, [1, 6], 1, phi_policy=Fraction(1, 4))
    assert res.size == 1 and tc_equivalent(D, res.graph, [1, 6], 1)
    rng = random.Random(5)
    E = [(i, j) for i in range(1, 31) for j in range(i + 1, 31) if rng.random() < 0.2]
    G = build_graph(30, E, rng.sample(range(1, 31), 5), 2)
    res = efficient_poly_sized(G, phi_policy=Fraction(1, 8))
    assert tc_equivalent(G, res.graph, G.terminals, 2)
    trace = res.info["edge_trace"]
    assert all(a > b for a, b in zip(trace, trace[1:]))


def test_phi_policies():
    assert default_phi(16, 2) == Fraction(1, 4 * 16 * 64)
    assert resolve_phi(("fixed", 0.25), 10, 2) == Fraction(1, 4)
    assert resolve_phi("auto", 16, 2) == default_phi(16, 2)


@settings(max_examples=100)
@given(st.integers(0, 2**32 - 1))
def test_small_cut_enumeration_complete(seed):
    rng = random.Random(seed)
    G = instances.random_instance(rng, n_max=12, m_max=24)
    c = rng.randint(1, 3)
    nu = rng.randint(1, G.n)
    got = {w.edges for w in enumerate_small_cuts(G, c, nu)}
    assert got == small_cuts_bruteforce(G, c, min(nu, G.n - 1))


@settings(max_examples=100)
@given(st.integers(0, 2**32 - 1))
def test_pieces_meet_target_and_small_cuts_have_small_volume(seed):
    rng = random.Random(seed)
    G = instances.random_instance(rng, n_max=16, m_max=40)
    phi = Fraction(rng.choice([1, 1, 2, 3]), rng.choice([4, 5, 8, 10]))
    dec = expander_decompose(G, phi)
    assert frozenset().union(*dec.pieces) == G.vertices
    for P, ok in zip(dec.pieces, dec.verified):
        if not ok or len(P) < 2:
            continue
        H = G.induced(P)
        assert graph_conductance_exact(H) >= phi
        deg = H.volume_degrees()
        total = sum(deg.values())
        for w in enumerate_small_cuts(H, G.c, len(P) - 1):
            small = min(sum(deg[v] for v in w.side1), total - sum(deg[v] for v in w.side1))
            assert small <= G.c / phi


@settings(max_examples=60)
@given(st.integers(0, 2**32 - 1))
def test_index_contractions_are_safe_and_refusals_persist(seed):
    rng = random.Random(seed)
    G = instances.random_instance(rng, n_max=10, m_max=20, k_max=5)
    c = G.c
    K = max(connected_components(G), key=len)
    G = G.induced(K)
    if len(G.terminals) < 2:
        return
    cuts, _ = complete_min_cut_family(G, c)
    idx = build_cut_index(G, G.terminals, c, cuts)
    refused = []
    for e in G.live_edges():
        if G.is_loop(e):
            continue
        if is_contractible(idx, e):
            assert tc_equivalent(G, contract_edges(G, [e]), G.terminals, c)
            G, _ = contract_edge_and_update(G, idx, e)
        else:
            refused.append(e)
    for e in refused:
        if not G.is_loop(e):
            assert not is_contractible(idx, e)
