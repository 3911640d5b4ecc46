"""Offline fully-dynamic c-edge-connectivity by divide and conquer over time.

Each recursion node owns a time interval; edges alive throughout the
interval are compressed into a sparsifier on the vertices its events touch.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .graph import MultiGraph, thresholded_mincut
from .intersect import mimicking_via_containment
from .oracle import tc_equivalent
from .querylog import QueryLog
from .sparsifier import SparsifierResult, identity_sparsifier

SparsifyFn = Callable[[MultiGraph, Iterable[int], int], SparsifierResult]
SPOT_CHECK_TERMINALS = 12


@dataclass(frozen=True)
class EdgeCopy:
    u: int
    v: int
    first: int  # first graph index G_first holding the copy
    last: int  # last graph index holding it


@dataclass
class NodeSets:
    mid: int
    E_left: frozenset[int]
    E_right: frozenset[int]
    T_left: frozenset[int]
    T_right: frozenset[int]


@dataclass
class LifetimeIndex:
    q: int
    copies: dict[int, EdgeCopy] = field(default_factory=dict)
    root_edges: frozenset[int] = frozenset()
    nodes: dict[tuple[int, int], NodeSets] = field(default_factory=dict)

    @property
    def total_side_edges(self) -> int:
        return sum(len(s.E_left) + len(s.E_right) for s in self.nodes.values())


def _covers(cp: EdgeCopy, lo: int, hi: int) -> bool:
    return cp.first <= lo and hi <= cp.last


def _meets(cp: EdgeCopy, lo: int, hi: int) -> bool:
    return cp.first <= hi and lo <= cp.last


def edge_lifetime_index(log: QueryLog) -> LifetimeIndex:
    log.validate()
    q = len(log)
    copies: dict[int, EdgeCopy] = {}
    open_: dict[tuple[int, int], list[tuple[int, int, int]]] = defaultdict(list)
    cid = 0
    for i, (op, u, v) in enumerate(log.events, 1):
        key = (min(u, v), max(u, v))
        if op == "I":
            open_[key].append((cid, i, u))
            cid += 1
        elif op == "D":
            # LIFO among parallel copies
            k, start, a = open_[key].pop()
            copies[k] = EdgeCopy(a, u + v - a, start, i - 1)
    for key, stack in open_.items():
        for k, start, a in stack:
            copies[k] = EdgeCopy(a, key[0] + key[1] - a, start, q)
    copies = {k: cp for k, cp in sorted(copies.items()) if cp.first <= cp.last}
    index = LifetimeIndex(q, copies)
    if q == 0:
        return index
    index.root_edges = frozenset(k for k, cp in copies.items() if _covers(cp, 1, q))
    verts = [{u, v} for _, u, v in log.events]

    def build(lo: int, hi: int, partial: list[int]) -> None:
        if lo == hi:
            return
        mid = (lo + hi) // 2
        sides = []
        for a, b in ((lo, mid), (mid + 1, hi)):
            here = [k for k in partial if _meets(copies[k], a, b)]
            full = frozenset(k for k in here if _covers(copies[k], a, b))
            T = frozenset(x for i in range(a, b + 1) for x in verts[i - 1])
            sides.append((full, T, [k for k in here if k not in full]))
        index.nodes[(lo, hi)] = NodeSets(mid, sides[0][0], sides[1][0], sides[0][1], sides[1][1])
        build(lo, mid, sides[0][2])
        build(mid + 1, hi, sides[1][2])

    build(1, q, [k for k, cp in copies.items() if not _covers(cp, 1, q)])
    return index


def _with_copies(G: MultiGraph, index: LifetimeIndex, ids: Iterable[int], terminals: Iterable[int]) -> MultiGraph:
    edges = dict(G.edges)
    for k in ids:
        cp = index.copies[k]
        edges[k] = (cp.u, cp.v)
    return MultiGraph(G.vertices, edges, terminals, G.c, parent=G.parent_map)


def offline_connectivity(
    log: QueryLog,
    c: int,
    sparsify_fn: SparsifyFn | None = None,
    stats: dict | None = None,
    spot_check: bool = False,
) -> list[int]:
    """Thresholded connectivity min(c, mincut(u, v)) for every query, in order."""
    sparsify_fn = sparsify_fn or mimicking_via_containment
    index = edge_lifetime_index(log)
    q = index.q
    answers: dict[int, int] = {}
    sizes: list[tuple[int, int, int]] = []
    violations: list[tuple[int, int]] = []
    if q == 0:
        return []
    verts = sorted(log.vertices())
    root = MultiGraph(verts, {k: (index.copies[k].u, index.copies[k].v) for k in index.root_edges}, (), c)

    def reference(lo: int, hi: int, T) -> MultiGraph:
        live = {k: (cp.u, cp.v) for k, cp in index.copies.items() if _covers(cp, lo, hi)}
        return MultiGraph(verts, live, T, c)

    def process(G: MultiGraph, lo: int, hi: int) -> None:
        if lo == hi:
            op, u, v = log.events[lo - 1]
            if op == "Q":
                answers[lo] = thresholded_mincut(G, [u], [v], c)
            return
        node = index.nodes[(lo, hi)]
        for a, b, E_side, T_side in (
            (lo, node.mid, node.E_left, node.T_left),
            (node.mid + 1, hi, node.E_right, node.T_right),
        ):
            H = _with_copies(G, index, sorted(E_side), T_side)
            S = sparsify_fn(H, T_side, c).graph
            sizes.append((a, b, S.m))
            if spot_check and len(T_side) <= SPOT_CHECK_TERMINALS:
                if not tc_equivalent(reference(a, b, T_side), S, T_side, c):
                    violations.append((a, b))
            process(S, a, b)

    process(root, 1, q)
    if stats is not None:
        stats.update(
            node_sizes=sizes,
            total_size=sum(s for *_, s in sizes),
            side_edges=index.total_side_edges,
            spot_check_violations=violations,
        )
    return [answers[i] for i in sorted(answers)]


def identity_fn(G: MultiGraph, T: Iterable[int], c: int) -> SparsifierResult:
    """No compression; isolates recursion bugs from sparsifier bugs."""
    return identity_sparsifier(G, T, c)


def multi_pair_connectivity(
    G: MultiGraph,
    pairs: list[tuple[Iterable[int], Iterable[int]]],
    c: int,
    sparsify_fn: SparsifyFn | None = None,
) -> list[int]:
    """mincut^c(A_i, B_i) for every pair through one offline run.

    Each pair gets fresh source and sink vertices tied to A_i and B_i by c
    parallel edges, a query, and deletion of those edges.
    """
    events: list[tuple[str, int, int]] = []
    for e in G.live_edges():
        u, v = G.endpoints(e)
        events.append(("I", u, v))
    fresh = G.next_vid()
    for A, B in pairs:
        s, t = fresh, fresh + 1
        fresh += 2
        ties = [(s, G.find(a)) for a in sorted(set(A))] + [(G.find(b), t) for b in sorted(set(B))]
        events += [("I", x, y) for x, y in ties for _ in range(c)]
        events.append(("Q", s, t))
        events += [("D", x, y) for x, y in ties for _ in range(c)]
    return offline_connectivity(QueryLog(events), c, sparsify_fn)
