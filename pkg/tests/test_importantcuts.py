import random

import pytest
from hypothesis import given, settings, strategies as st

from cmimic import instances
from cmimic.graph import boundary, build_graph
from cmimic.importantcuts import (
    ConstrainedCutSpec,
    constrained_cut,
    constrained_cut_base,
    enumerate_important_cuts,
    find_violating_cut_fpt,
    is_important,
)
from cmimic.oracle import (
    constrained_cut_bruteforce,
    find_violating_cut_bruteforce,
    important_cuts_bruteforce,
    is_violating,
)


def pendant_dumbbell():
    E = [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6), (3, 4), (1, 7), (2, 8), (5, 9), (6, 10)]
    return build_graph(10, E, [7, 8, 9, 10], 2)


def test_path_single_important_cut(P5):
    cuts = enumerate_important_cuts(P5, {1}, {5}, 1)
    assert len(cuts) == 1
    assert cuts[0].side1 == {1, 2, 3, 4} and cuts[0].edges == {3}


def test_cycle_opposite(C4):
    cuts = enumerate_important_cuts(C4, {1}, {3}, 2)
    assert 1 <= len(cuts) <= 16
    assert sorted((w.side1 for w in cuts), key=sorted) == sorted(important_cuts_bruteforce(C4, {1}, {3}, 2), key=sorted)
    assert all(w.value == 2 for w in cuts)


def test_too_many_parallel_edges():
    G = build_graph(2, [(1, 2, 3)], [], 3)
    assert enumerate_important_cuts(G, {1}, {2}, 2) == []


def test_constrained_zero_requirements_is_plain_mincut(P5):
    query = ConstrainedCutSpec({2}, {4}, 0, 0, 1)
    w = constrained_cut(P5, set(), query)
    assert w is not None and w.value == 1 and 2 in w.side1 and 4 in w.side2
    assert constrained_cut(P5, set(), ConstrainedCutSpec({2}, {4}, 0, 0, 0)) is None


def test_constrained_star_infeasible(STAR5):
    query = ConstrainedCutSpec({1}, set(), 2, 2, 1)
    assert constrained_cut(STAR5, STAR5.terminals, query) is None
    assert constrained_cut_bruteforce(STAR5, STAR5.terminals, {1}, set(), 2, 2, 1) is None


def test_constrained_dumbbell_bridge():
    G = pendant_dumbbell()
    w = constrained_cut(G, G.terminals, ConstrainedCutSpec(set(), set(), 2, 2, 1))
    assert w is not None and w.edges == {6}


def test_constrained_rejects_terminals_and_cap(STAR5):
    with pytest.raises(ValueError):
        constrained_cut(STAR5, STAR5.terminals, ConstrainedCutSpec({2}, set(), 1, 1, 1))
    with pytest.raises(ValueError):
        constrained_cut(STAR5, STAR5.terminals, ConstrainedCutSpec(set(), set(), 5, 1, 1))
    with pytest.raises(ValueError):
        ConstrainedCutSpec({1}, {1}, 0, 0, 0)


def test_base_case_examples(P5):
    w = constrained_cut_base(P5, set(), {2}, {4}, 0, 1)
    assert w is not None and w.value <= 1
    assert constrained_cut_base(P5, set(), {2}, {4}, 0, 0) is None
    # star of paths: centre 1, three arms of length 2 ending in terminals 5, 6, 7
    E = [(1, 2), (2, 5), (1, 3), (3, 6), (1, 4), (4, 7)]
    G = build_graph(7, E, [5, 6, 7], 3)
    w = constrained_cut_base(G, G.terminals, {2}, {1}, 1, 1)
    assert w is not None and 5 in w.side1 and w.value == 1
    assert constrained_cut_bruteforce(G, G.terminals, {2}, {1}, 1, 0, 1) is not None


def test_violating_fpt_examples(P5):
    assert find_violating_cut_fpt(P5, {2, 3, 4}, 2) is None
    G = pendant_dumbbell()
    w = find_violating_cut_fpt(G, range(1, 7), 2)
    assert w is not None and w.edges == {6}
    # two 4-cliques joined by two edges, each clique with 3 pendant terminals: violating only at l = 2
    K = [(i, j) for i in range(1, 5) for j in range(i + 1, 5)]
    E = K + [(i + 4, j + 4) for i, j in K] + [(1, 5), (2, 6)]
    E += [(1, 9), (2, 10), (3, 11), (5, 12), (6, 13), (7, 14)]
    G = build_graph(14, E, range(9, 15), 3)
    w = find_violating_cut_fpt(G, range(1, 9), 3)
    assert w is not None and w.value == 2
    assert is_violating(G, range(1, 9), w.side1, 3)
    assert find_violating_cut_fpt(G, range(1, 9), 2) is None
    assert find_violating_cut_bruteforce(G, range(1, 9), 2) is None


@settings(max_examples=120)
@given(st.integers(0, 2**32 - 1))
def test_important_cut_properties(seed):
    rng = random.Random(seed)
    G = instances.random_instance(rng, n_max=9, m_max=16, n_min=4)
    c = rng.randint(1, 4)
    vs = sorted(G.vertices)
    X = set(rng.sample(vs, rng.randint(1, 2)))
    Y = set(rng.sample([v for v in vs if v not in X], rng.randint(1, 2)))
    cuts = enumerate_important_cuts(G, X, Y, c)
    assert len(cuts) <= 4**c
    assert sorted((w.side1 for w in cuts), key=sorted) == sorted(important_cuts_bruteforce(G, X, Y, c), key=sorted)
    for w in cuts:
        assert is_important(G, w.side1, Y)
        # growing X inside the cut's own side keeps it important
        extra = set(rng.sample(sorted(w.side1), rng.randint(0, len(w.side1))))
        again = enumerate_important_cuts(G, X | extra, Y, c)
        assert w.side1 in [v.side1 for v in again]
