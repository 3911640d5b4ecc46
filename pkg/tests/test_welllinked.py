import random

import pytest
from hypothesis import given, settings, strategies as st

from cmimic import instances
from cmimic.graph import boundary, build_graph, terminal_gadget
from cmimic.oracle import tc_equivalent, verify_containing
from cmimic.welllinked import (
    SPARSE,
    WELL_LINKED,
    PiecePartition,
    base_case_kept,
    base_case_sparsifier,
    boundary_preprocess,
    partition_potential,
    poly_sized_c_network,
)


def test_path_interior_contracts(P5):
    res = poly_sized_c_network(P5)
    assert tc_equivalent(P5, res.graph, P5.terminals, 1)
    assert res.size <= 2 and res.graph.n <= 3


def test_star_stays_itself(STAR5):
    res = poly_sized_c_network(STAR5)
    assert res.graph.n == 5 and res.size == 4
    part = res.info["partition"]
    assert part.pieces == [frozenset({1})] and part.status == [WELL_LINKED]


def test_random_dense_instance_size():
    rng = random.Random(7)
    E = [(i, j) for i in range(1, 21) for j in range(i + 1, 21) if rng.random() < 0.3]
    G = build_graph(20, E, rng.sample(range(1, 21), 4), 2)
    res = poly_sized_c_network(G)
    assert tc_equivalent(G, res.graph, G.terminals, 2)
    assert res.size <= 4 * 2**4


def test_fpt_finder_route_matches():
    rng = random.Random(3)
    for _ in range(10):
        G = instances.random_instance(rng, n_max=10, m_max=18, k_max=4, c_max=2)
        res = poly_sized_c_network(G, cut_finder="fpt")
        assert tc_equivalent(G, res.graph, G.terminals, G.c)


def test_boundary_preprocess_three_edges():
    G = build_graph(5, [(1, 2), (1, 3), (1, 4), (4, 5)], [2, 3, 5], 2)
    H, W = boundary_preprocess(G, {1, 4})
    assert len(W) == 3
    X = {1, 4} | set(W)
    for w in W:
        assert sum(1 for _, y in H.adj[w] if y in X) == 1
    assert tc_equivalent(G, H, G.terminals, 2)


def test_boundary_preprocess_isolated_piece():
    G = build_graph(4, [(1, 2), (3, 4)], [1, 2], 2)
    H, W = boundary_preprocess(G, {3, 4})
    assert W == frozenset()
    res = poly_sized_c_network(G)
    assert res.graph.find(3) == res.graph.find(4)


def test_subdivision_on_c4(C4):
    H, W = boundary_preprocess(C4, {2})
    assert len(W) == 2 and tc_equivalent(C4, H, C4.terminals, 2)


def test_base_case_examples(STAR5):
    stub = build_graph(3, [(1, 2), (2, 3)], [1, 3], 2)
    assert len(base_case_kept(stub, stub.terminals, 2)) == 1
    E = [(1, 2), (2, 3), (3, 4), (4, 1), (1, 5), (2, 6), (3, 7), (4, 8)]
    G = build_graph(8, E, [5, 6, 7, 8], 2)
    kept = base_case_kept(G, G.terminals, 2)
    assert len(kept) <= 16
    assert verify_containing(G, G.terminals, 2, kept)
    res = base_case_sparsifier(G, G.terminals, 2)
    assert tc_equivalent(G, res.graph, G.terminals, 2)
    K4 = instances.complete(4, terminals=[1, 2], c=2)
    res = base_case_sparsifier(K4, [1, 2], 2)
    assert res.kept_edges == frozenset() and res.graph.n == 1


def test_base_case_cap():
    G = instances.star(15, c=1)
    with pytest.raises(ValueError):
        base_case_kept(G, G.terminals, 1)


def test_partition_potential_examples():
    assert partition_potential([8], 2) == 5
    p = PiecePartition()
    p.add(frozenset({1}), frozenset({0, 1, 2}), SPARSE)
    assert partition_potential(p, 2) == 0


@settings(max_examples=60)
@given(st.integers(0, 2**32 - 1))
def test_existence_route_invariants(seed):
    rng = random.Random(seed)
    G = instances.random_instance(rng, n_max=12, m_max=26, k_max=5)
    res = poly_sized_c_network(G)
    c = G.c
    assert tc_equivalent(G, res.graph, G.terminals, c)
    part = res.info["partition"]
    Gg, _ = terminal_gadget(G.with_c(c))
    seen = set()
    for X, st_ in zip(part.pieces, part.status):
        assert not (X & seen)
        seen |= X
        if st_ == SPARSE:
            assert len(boundary(Gg, X)) <= 2 * c - 1
        else:
            # contracting a well-linked piece on its own is safe
            assert tc_equivalent(Gg, Gg.merge_vertices(X), Gg.terminals, c)
    assert seen == Gg.vertices - Gg.terminals
    assert len(part.pieces) <= max(1, res.info["root_boundary"])
    for s in res.info["splits"]:
        assert s["potential_after"] < s["potential_before"]
        assert max(s["children"]) < s["boundary"]
    total = len(frozenset().union(*part.boundaries))
    assert total <= res.info["root_boundary"] + c * len(res.info["splits"])
