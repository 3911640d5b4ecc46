"""Named small graphs and seeded random workloads."""

from __future__ import annotations

import random

from .graph import MultiGraph, build_graph
from .querylog import QueryLog


def path(n: int, terminals=None, c: int = 1) -> MultiGraph:
    return build_graph(n, [(i, i + 1) for i in range(1, n)], terminals or [1, n], c)


def star(leaves: int, c: int = 2) -> MultiGraph:
    """Centre 1, leaves 2..leaves+1 as terminals."""
    return build_graph(leaves + 1, [(1, i) for i in range(2, leaves + 2)], range(2, leaves + 2), c)


def complete(n: int, terminals=None, c: int = 2) -> MultiGraph:
    E = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    return build_graph(n, E, range(1, n + 1) if terminals is None else terminals, c)


def cycle(n: int, terminals=None, c: int = 2) -> MultiGraph:
    E = [(i, i % n + 1) for i in range(1, n + 1)]
    return build_graph(n, E, terminals or [1], c)


def dumbbell(k: int = 3, c: int = 2) -> MultiGraph:
    """Two K_k joined by a single bridge between vertices k and k+1."""
    E = [(i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)]
    E += [(i + k, j + k) for i, j in E]
    E.append((k, k + 1))
    return build_graph(2 * k, E, [1, 2 * k], c)


def two_triangles(c: int = 2) -> MultiGraph:
    """Triangles 1-2-3 and 4-5-6 joined by the bridge 3-4; terminals 1,2,5,6."""
    E = [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6), (3, 4)]
    return build_graph(6, E, [1, 2, 5, 6], c)


def double_star(c: int = 2) -> MultiGraph:
    """Centres 1 and 2 joined by two parallel edges, three terminal leaves each."""
    E = [(1, 2, 2)] + [(1, i) for i in (3, 4, 5)] + [(2, i) for i in (6, 7, 8)]
    return build_graph(8, E, range(3, 9), c)


def random_instance(
    rng: random.Random,
    n_max: int = 20,
    m_max: int = 50,
    k_max: int = 8,
    c_max: int = 3,
    n_min: int = 3,
) -> MultiGraph:
    n = rng.randint(n_min, n_max)
    c = rng.randint(1, c_max)
    m = rng.randint(min(n - 1, m_max), min(m_max, 3 * n))
    edges = []
    # a random spanning tree first keeps most instances connected
    for v in range(2, n + 1):
        if len(edges) < m and rng.random() < 0.9:
            edges.append((rng.randint(1, v - 1), v))
    while len(edges) < m:
        u, v = rng.sample(range(1, n + 1), 2)
        edges.append((u, v))
    k = rng.randint(2, min(k_max, n))
    return build_graph(n, edges, rng.sample(range(1, n + 1), k), c)


def random_log(rng: random.Random, q: int, n: int, p_insert: float = 0.45, p_delete: float = 0.25) -> QueryLog:
    events = []
    live: list[tuple[int, int]] = []
    for _ in range(q):
        r = rng.random()
        if r < p_insert or not live:
            u, v = rng.sample(range(1, n + 1), 2)
            events.append(("I", u, v))
            live.append((u, v))
        elif r < p_insert + p_delete:
            u, v = live.pop(rng.randrange(len(live)))
            events.append(("D", u, v))
        else:
            u, v = rng.sample(range(1, n + 1), 2)
            events.append(("Q", u, v))
    return QueryLog(events)
