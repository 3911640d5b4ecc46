"""Edge sets that intersect or contain every small terminal cut, and the
contraction-based sparsifier built from them."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .expander import enumerate_small_cuts, expander_decompose, resolve_phi
from .graph import (
    TOP,
    CutWitness,
    MultiGraph,
    _Top,
    boundary,
    connected_components,
    is_connected,
    max_flow_bounded,
    sparse_certificate,
)
from .oracle import bipartitions
from .sparsifier import SparsifierResult, result_from_kept

NONTRIVIAL_SEARCH_CAP = 2_000_000
STRATEGIES = ("nontrivial", "terminal", "terminal-fast")


@dataclass
class IntersectingSet:
    edges: frozenset[int]
    provenance: dict[int, str] = field(default_factory=dict)
    trace: dict = field(default_factory=dict)

    def __iter__(self):
        return iter(sorted(self.edges))

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, e: object) -> bool:
        return e in self.edges


class ContainingSet(IntersectingSet):
    pass


class _Acc:
    """Edge accumulator that remembers the first reason each edge was added."""

    def __init__(self) -> None:
        self.tags: dict[int, str] = {}

    def add(self, edges: Iterable[int], tag: str) -> None:
        for e in edges:
            self.tags.setdefault(e, tag)

    def result(self, cls=IntersectingSet, **trace) -> IntersectingSet:
        return cls(frozenset(self.tags), dict(sorted(self.tags.items())), trace)


# --- primitive cuts -----------------------------------------------------------


def min_terminal_cut(G: MultiGraph, T: Iterable[int], c: int) -> CutWitness | _Top:
    """Minimum cut with terminals on both sides, or TOP if every one exceeds c.

    Every terminal cut separates the smallest terminal from some other one, so
    k - 1 bounded flows suffice.  Ties go to the smallest edge set.
    """
    T = sorted(G.resolve(T))
    if len(T) < 2:
        raise ValueError("need at least two terminals")
    t0 = T[0]
    best: CutWitness | None = None
    for t in T[1:]:
        res = max_flow_bounded(G, [t0], [t], c)
        if res.is_top:
            continue
        w = res.witness
        if best is None or (w.value, w.key()) < (best.value, best.key()):
            best = w
    if best is None:
        return TOP
    if best.value > 0 and is_connected(G):
        assert is_connected(G, best.side1) and is_connected(G, best.side2)
    return _with_terminals(G, best, T)


def _with_terminals(G: MultiGraph, w: CutWitness, T: Iterable[int]) -> CutWitness:
    T = frozenset(T)
    return CutWitness(w.edges, w.side1, w.side2, (w.side1 & T, w.side2 & T))


def maximal_isolating_cut(G: MultiGraph, s: int, T: Iterable[int], c: int) -> CutWitness | _Top:
    """Minimum cut with s alone on its side, choosing the largest such side."""
    s = G.find(s)
    others = G.resolve(T) - {s}
    if not others:
        raise ValueError("need a terminal other than s")
    res = max_flow_bounded(G, [s], others, c)
    if res.is_top:
        return TOP
    # vertices that cannot reach the other terminals form the largest s-side
    side = frozenset(G.vertices - res.residual_sink_side)
    edges = boundary(G, side)
    assert len(edges) == res.value
    return CutWitness(edges, side, frozenset(res.residual_sink_side), (frozenset({s}), frozenset(others)))


def _partition_mincuts(G: MultiGraph, T: Iterable[int], c: int) -> set[int]:
    out: set[int] = set()
    for left, right in bipartitions(G.resolve(T)):
        res = max_flow_bounded(G, left, right, c)
        if not res.is_top:
            out |= res.witness.edges
    return out


def _components_with_terminals(G: MultiGraph, T: frozenset[int]):
    for K in connected_components(G):
        TK = T & K
        if len(TK) >= 2:
            yield G.induced(K, terminals=TK), TK


# --- recursion on non-trivial cuts ----------------------------------------


def find_nontrivial_cut(G: MultiGraph, T: Iterable[int], c: int) -> CutWitness | None:
    """A cut of at most c edges with both sides connected and two terminals on each.

    A side of such a cut is connected and contains a fixed start vertex, so a
    single-start exhaustive small-cut enumeration sees all of them.
    """
    T = G.resolve(T)
    if len(T) < 4 or G.n < 4:
        return None
    if G.n**c > NONTRIVIAL_SEARCH_CAP:
        raise ValueError(f"non-trivial cut search exceeds NONTRIVIAL_SEARCH_CAP={NONTRIVIAL_SEARCH_CAP}")
    start = min(G.vertices)
    for w in enumerate_small_cuts(G, c, G.n - 1, starts=[start]):
        if len(w.side1 & T) < 2 or len(w.side2 & T) < 2:
            continue
        if is_connected(G, w.side1) and is_connected(G, w.side2):
            return _with_terminals(G, w, T)
    return None


def recursive_nontrivial_cuts(G: MultiGraph, T: Iterable[int] | None = None, c: int | None = None) -> IntersectingSet:
    c = G.c if c is None else c
    T = G.terminals if T is None else G.resolve(T)
    acc = _Acc()
    stats = {"splits": 0, "calls": 0}
    for H, TK in _components_with_terminals(G, T):
        _split_nontrivial(H, TK, c, acc, stats)
    return acc.result(**stats)


def _split_nontrivial(G: MultiGraph, T: frozenset[int], c: int, acc: _Acc, stats: dict) -> None:
    stats["calls"] += 1
    if len(T) <= 4:
        acc.add(_partition_mincuts(G, T, c), "base")
        return
    w = find_nontrivial_cut(G, T, c)
    if w is not None:
        stats["splits"] += 1
        acc.add(w.edges, "nontrivial")
        for keep, gone in ((w.side1, w.side2), (w.side2, w.side1)):
            H = G.merge_vertices(gone)
            v = H.find(min(gone))
            TH = (T & keep) | {v}
            _split_nontrivial(H.with_terminals(TH), TH, c, acc, stats)
        return
    for s in sorted(T):
        res = max_flow_bounded(G, [s], T - {s}, c)
        if not res.is_top:
            acc.add(res.witness.edges, "isolating")


# --- recursion on minimum terminal cuts -----------------------------------


MinCutFn = Callable[[MultiGraph, frozenset[int], int], "CutWitness | _Top"]


def recursive_terminal_cuts(
    G: MultiGraph,
    T: Iterable[int] | None = None,
    c: int | None = None,
    certificate: bool = True,
) -> IntersectingSet:
    c = G.c if c is None else c
    T = G.terminals if T is None else G.resolve(T)
    H = sparse_certificate(G, c + 1) if certificate else G
    acc = _Acc()
    stats = {"splits": 0, "isolations": 0}
    for K, TK in _components_with_terminals(H, T):
        _split_terminal(K, TK, c, acc, stats, min_terminal_cut)
    return acc.result(**stats)


def _split_terminal(G: MultiGraph, T: frozenset[int], c: int, acc: _Acc, stats: dict, mincut: MinCutFn) -> None:
    while len(T) > 4:
        w = mincut(G, T, c)
        if w is TOP:
            return
        if len(w.side1 & T) >= 2 and len(w.side2 & T) >= 2:
            stats["splits"] += 1
            acc.add(w.edges, "nontrivial")
            for keep, gone in ((w.side1, w.side2), (w.side2, w.side1)):
                H = G.merge_vertices(gone)
                v = H.find(min(gone))
                TH = (T & keep) | {v}
                _split_terminal(H.with_terminals(TH), TH, c, acc, stats, mincut)
            return
        (s,) = w.side1 & T if len(w.side1 & T) == 1 else w.side2 & T
        x = w.value
        F: frozenset[int] | None = None
        while True:
            iso = maximal_isolating_cut(G, s, T, c)
            if iso is TOP or iso.value != x:
                break
            F = iso.edges
            ends = {y for e in F for y in G.endpoints(e)}
            G = G.merge_vertices(iso.side1 | ends)
            s = G.find(s)
            before = len(T)
            T = G.resolve(T)
            stats["isolations"] += 1
            if len(T) < before:
                break
        assert F is not None
        acc.add(F, "isolating")
    acc.add(_partition_mincuts(G, T, c), "base")


# --- local cuts and the fast variant -----------------------------------------


@dataclass(frozen=True)
class LocalCut:
    value: int
    witness: CutWitness


def local_cut(G: MultiGraph, v: int, c: int, nu: int) -> LocalCut | _Top:
    """Exact minimum cut of at most c edges whose side holding v has volume at most
    min(nu, volume of the other side); TOP when none exists."""
    v = G.find(v)
    deg = G.volume_degrees()
    total = sum(deg.values())
    best: CutWitness | None = None
    for w in enumerate_small_cuts(G, c, nu, starts=[v]):
        side = w.side1 if v in w.side1 else w.side2
        vol = sum(deg[x] for x in side)
        if vol > nu or 2 * vol > total:
            continue
        if best is None or (w.value, w.key()) < (best.value, best.key()):
            best = w
    return TOP if best is None else LocalCut(best.value, best)


def _heap_mincut(phi: Fraction | None, trace: list):
    """Minimum terminal cut via cached LocalCut lower bounds, which can only
    grow under contraction; falls back to flows when the local optimum does
    not separate terminals."""
    cache: dict[int, int] = {}

    def fn(G: MultiGraph, T: frozenset[int], c: int):
        vol = sum(G.volume_degrees().values())
        nu = vol // 2
        if phi is not None and phi > 0:
            nu = min(nu, math.ceil(c / phi))
        # merged vertices inherit the largest lower bound of their members
        lower: dict[int, int] = {}
        for t, val in cache.items():
            r = G.find(t)
            lower[r] = max(lower.get(r, 0), val)
        heap = [(lower.get(t, 0), t) for t in sorted(T)]
        heapq.heapify(heap)
        while heap:
            lb, t = heapq.heappop(heap)
            lc = local_cut(G, t, c, nu)
            val = c + 1 if lc is TOP else lc.value
            trace.append((t, lb, val))
            assert val >= lb, "LocalCut decreased under contraction"
            cache[t] = val
            if heap and val > heap[0][0]:
                heapq.heappush(heap, (val, t))
                continue
            if lc is TOP:
                return TOP
            w = lc.witness
            if w.side1 & T and w.side2 & T:
                return _with_terminals(G, w, T)
            break
        trace.append(("fallback", None, None))
        return min_terminal_cut(G, T, c)

    return fn


def recursive_terminal_cuts_fast(
    G: MultiGraph,
    T: Iterable[int] | None = None,
    c: int | None = None,
    phi: Fraction | float | None = None,
    threshold: float | None = None,
    certificate: bool = True,
) -> IntersectingSet:
    c = G.c if c is None else c
    T = G.terminals if T is None else G.resolve(T)
    phi_f = None if phi is None else Fraction(phi).limit_denominator(10**9)
    if threshold is None:
        threshold = 500 * c * c / float(phi_f) if phi_f else math.inf
    if len(T) <= threshold:
        out = recursive_terminal_cuts(G, T, c, certificate=certificate)
        out.trace["branch"] = "flow"
        return out
    H = sparse_certificate(G, c + 1) if certificate else G
    acc = _Acc()
    local_trace: list = []
    stats = {"splits": 0, "isolations": 0}
    for K, TK in _components_with_terminals(H, T):
        _split_terminal(K, TK, c, acc, stats, _heap_mincut(phi_f, local_trace))
    return acc.result(branch="local", local_trace=local_trace, **stats)


# --- containing sets and the sparsifier ----------------------------------------


def _strategy(name: str):
    if name == "nontrivial":
        return recursive_nontrivial_cuts
    if name == "terminal":
        return recursive_terminal_cuts
    if name == "terminal-fast":
        return recursive_terminal_cuts_fast
    raise ValueError(f"unknown intersect strategy {name!r}; choose from {STRATEGIES}")


def get_containing_edges(
    G: MultiGraph,
    T: Iterable[int] | None = None,
    c: int | None = None,
    intersect_strategy: str = "terminal",
) -> ContainingSet:
    """Peel intersecting sets for thresholds c, c-1, ..., 1; each round deletes
    the new edges and makes their endpoints terminals."""
    c = G.c if c is None else c
    T = G.terminals if T is None else G.resolve(T)
    fn = _strategy(intersect_strategy)
    acc = _Acc()
    cur = G
    rounds = []
    for chat in range(c, 0, -1):
        if len(T) < 2:
            rounds.append({"c": chat, "new": 0, "total": len(acc.tags)})
            continue
        got = fn(cur, T, chat)
        new = got.edges - set(acc.tags)
        acc.add(sorted(got.edges), f"round-{chat}")
        cur = G.without_edges(acc.tags)
        T = T | {y for e in got.edges for y in G.endpoints(e)}
        rounds.append({"c": chat, "new": len(new), "total": len(acc.tags), "terminals": len(T)})
    return acc.result(ContainingSet, rounds=rounds)


def contract_to_sparsifier(G: MultiGraph, E_con: Iterable[int]) -> SparsifierResult:
    """G / (E minus E_con)."""
    E_con = set(E_con)
    res = result_from_kept(G, E_con, {"method": "contain-contract"})
    res.info["components"] = len(connected_components(G))
    return res


def containment_phi(n: int, c: int, C_int: float = 1.0) -> Fraction:
    logn = max(1, math.ceil(math.log2(max(n, 2))))
    denom = 5 * c * (4 * C_int) ** c * math.factorial(c) ** 2 * logn**4
    return Fraction(1, 1) / Fraction(denom).limit_denominator(10**6)


def mimicking_via_containment(
    G: MultiGraph,
    T: Iterable[int] | None = None,
    c: int | None = None,
    phi_policy="default",
    C_int: float = 1.0,
    strategy: str = "terminal-fast",
    max_iter: int | None = None,
) -> SparsifierResult:
    """Certificate, decompose, contain per piece, contract; repeat while it shrinks.

    Edges outside the sparse certificate are deleted rather than contracted,
    so the output is a contraction of a subgraph with the same thresholded
    terminal cuts.
    """
    c = G.c if c is None else c
    G0 = G.with_terminals(G.terminals if T is None else T).with_c(c)
    T0 = G0.terminals
    n0 = G0.n
    if phi_policy in (None, "default", "auto"):
        phi = containment_phi(n0, c, C_int)
    else:
        phi = resolve_phi(phi_policy, n0, c)
    cap = max_iter if max_iter is not None else int(math.log2(max(n0, 2))) + 5
    cur = G0
    rounds = []
    for _ in range(cap):
        H = sparse_certificate(cur, c)
        dec = expander_decompose(H, phi)
        promoted = {y for e in dec.inter_cluster_edges for y in H.endpoints(e)}
        E_con = set(dec.inter_cluster_edges)
        for P in dec.pieces:
            TP = (H.resolve(T0) | promoted) & P
            if len(TP) < 2:
                continue
            piece = H.induced(P, terminals=TP)
            E_con |= get_containing_edges(piece, TP, c, strategy).edges
        nxt = contract_to_sparsifier(H, E_con).graph
        rounds.append({
            "vertices_before": cur.n,
            "vertices_after": nxt.n,
            "edges_after": nxt.m,
            "pieces": len(dec.pieces),
            "promoted": len(promoted),
            "containing": len(E_con),
        })
        if nxt.n < cur.n:
            cur = nxt
        else:
            # no vertex saved; keep only the certificate
            cur = H if H.m < cur.m else cur
            break
    kept = frozenset(cur.live_edges())
    merge = {v: cur.find(v) for v in sorted(G0.vertices)}
    return SparsifierResult(cur, kept, merge, {"method": "containment", "phi": phi, "rounds": rounds})
