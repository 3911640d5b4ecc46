"""Exhaustive ground-truth checks.  Every function here is brute force by design
and refuses inputs past its enumeration cap instead of approximating."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .graph import CutWitness, MultiGraph, boundary, thresholded_mincut
from .querylog import QueryLog

TC_TERMINAL_CAP = 16
DISJOINT_TERMINAL_CAP = 10
WELL_LINKED_CAP = 20
EDGESET_EDGE_CAP = 30
EDGESET_C_CAP = 4


@dataclass(frozen=True)
class Bipartition:
    left: frozenset[int]
    right: frozenset[int]


@dataclass(frozen=True)
class EquivalenceResult:
    ok: bool
    counterexample: Bipartition | None = None
    values: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def bipartitions(T: Iterable[int]) -> Iterator[tuple[frozenset[int], frozenset[int]]]:
    """All 2^{k-1}-1 splits with the smallest terminal on the left."""
    T = sorted(T)
    if len(T) < 2:
        return
    first, rest = T[0], T[1:]
    for mask in range(0, (1 << len(rest)) - 1):
        left = {first} | {t for i, t in enumerate(rest) if mask >> i & 1}
        yield frozenset(left), frozenset(T) - frozenset(left)


def _labels_in(G: MultiGraph, T: Iterable[int]) -> None:
    for t in T:
        if not G.knows(t):
            raise KeyError(f"terminal label {t} missing from graph")


def tc_equivalent(G: MultiGraph, H: MultiGraph, T: Iterable[int], c: int) -> EquivalenceResult:
    T = sorted(set(T))
    if len(T) > TC_TERMINAL_CAP:
        raise ValueError(f"tc_equivalent limited to {TC_TERMINAL_CAP} terminals")
    _labels_in(G, T)
    _labels_in(H, T)
    for left, right in bipartitions(T):
        a = thresholded_mincut(G, left, right, c)
        b = thresholded_mincut(H, left, right, c)
        if a != b:
            return EquivalenceResult(False, Bipartition(left, right), (a, b))
    return EquivalenceResult(True)


def disjoint_subset_equivalent(G: MultiGraph, H: MultiGraph, T: Iterable[int], c: int) -> bool:
    T = sorted(set(T))
    if len(T) > DISJOINT_TERMINAL_CAP:
        raise ValueError(f"disjoint_subset_equivalent limited to {DISJOINT_TERMINAL_CAP} terminals")
    _labels_in(G, T)
    _labels_in(H, T)
    for signs in itertools.product((0, 1, 2), repeat=len(T)):
        A = [t for t, s in zip(T, signs) if s == 1]
        B = [t for t, s in zip(T, signs) if s == 2]
        if not A or not B or min(A) > min(B):
            continue
        if thresholded_mincut(G, A, B, c) != thresholded_mincut(H, A, B, c):
            return False
    return True


# --- well-linkedness -------------------------------------------------------


def find_violating_cut_bruteforce(G: MultiGraph, X: Iterable[int], c: int) -> CutWitness | None:
    """Bipartition (A, B) of X with |E(A,B)| < min(|dA ∩ dX|, |dB ∩ dX|, c).

    The returned witness has side1 = A and side2 = B (a partition of X, not of V).
    Among violating cuts the smallest |E(A,B)| wins, then the smallest bitmask.
    """
    order = sorted(G.resolve(X))
    if len(order) > WELL_LINKED_CAP:
        raise ValueError(f"well-linkedness check limited to {WELL_LINKED_CAP} vertices")
    if len(order) < 2:
        return None
    idx = {v: i for i, v in enumerate(order)}
    k = len(order) - 1
    masks = np.arange(1, 1 << k, dtype=np.int64)
    bits = [((masks >> i) & 1).astype(np.int16) for i in range(k)]
    zero = np.zeros(masks.shape, dtype=np.int16)

    def bit(v: int) -> np.ndarray:
        i = idx[v]
        return bits[i] if i < k else zero

    inner = np.zeros(masks.shape, dtype=np.int16)
    inner_edges = []
    for eid in G.live_edges():
        u, v = G.endpoints(eid)
        if u in idx and v in idx:
            inner += bit(u) ^ bit(v)
            inner_edges.append(eid)
    bA = np.zeros(masks.shape, dtype=np.int16)
    dX = boundary(G, order)
    for eid in dX:
        u, v = G.endpoints(eid)
        bA += bit(u if u in idx else v)
    bB = len(dX) - bA
    viol = inner < np.minimum(np.minimum(bA, bB), c)
    hits = np.nonzero(viol)[0]
    if hits.size == 0:
        return None
    best = min(hits, key=lambda i: (int(inner[i]), int(masks[i])))
    mask = int(masks[best])
    A = frozenset(order[i] for i in range(k) if mask >> i & 1)
    B = frozenset(order) - A
    F = frozenset(e for e in inner_edges if (G.endpoints(e)[0] in A) != (G.endpoints(e)[1] in A))
    return CutWitness(F, A, B, (G.terminals & A, G.terminals & B))


def is_well_linked(G: MultiGraph, X: Iterable[int], c: int) -> bool:
    return find_violating_cut_bruteforce(G, X, c) is None


def is_violating(G: MultiGraph, X: Iterable[int], A: Iterable[int], c: int) -> bool:
    """Direct check of one bipartition (A, X minus A)."""
    X = G.resolve(X)
    A = G.resolve(A)
    B = X - A
    if not A or not B or not A <= X:
        return False
    dX = boundary(G, X)
    dA = boundary(G, A)
    dB = boundary(G, B)
    e_ab = len(dA - dX)
    return e_ab < min(len(dA & dX), len(dB & dX), c)


# --- edge-set enumeration for Defs. of containing / intersecting sets ----------


def _check_edgeset_caps(G: MultiGraph, c: int) -> None:
    if G.m > EDGESET_EDGE_CAP or c > EDGESET_C_CAP:
        raise ValueError(f"edge-set oracle limited to m <= {EDGESET_EDGE_CAP}, c <= {EDGESET_C_CAP}")


def _components_label(G: MultiGraph, removed: set[int], edges: Sequence[int]) -> dict[int, int]:
    uf = {v: v for v in G.vertices}

    def root(x: int) -> int:
        while uf[x] != x:
            uf[x] = uf[uf[x]]
            x = uf[x]
        return x

    for e in edges:
        if e in removed:
            continue
        u, v = G.endpoints(e)
        ru, rv = root(u), root(v)
        if ru != rv:
            uf[ru] = rv
    return {v: root(v) for v in G.vertices}


def _separated_keys(label: dict[int, int], T: list[int]) -> list[int]:
    """Canonical terminal-bitmask keys of every bipartition separated by a labelling."""
    groups: dict[int, int] = {}
    for i, t in enumerate(T):
        groups[label[t]] = groups.get(label[t], 0) | (1 << i)
    gm = list(groups.values())
    if len(gm) < 2:
        return []
    full = (1 << len(T)) - 1
    first, rest = gm[0], gm[1:]
    keys = []
    for sel in range(0, (1 << len(rest)) - 1):
        left = first
        for j, g in enumerate(rest):
            if sel >> j & 1:
                left |= g
        keys.append(left if left & 1 else full ^ left)
    return keys


def _key_of(left: frozenset[int], T: list[int]) -> int:
    full = (1 << len(T)) - 1
    key = sum(1 << i for i, t in enumerate(T) if t in left)
    return key if key & 1 else full ^ key


def _required(G: MultiGraph, T: list[int], c: int) -> dict[int, int]:
    """Partition key -> mincut value, for every partition with mincut <= c."""
    out = {}
    for left, right in bipartitions(T):
        lam = thresholded_mincut(G, left, right, c + 1)
        if lam <= c:
            out[_key_of(left, T)] = lam
    return out


def verify_containing(G: MultiGraph, T: Iterable[int], c: int, E_con: Iterable[int]) -> bool:
    _check_edgeset_caps(G, c)
    T = sorted(G.resolve(T))
    live = G.live_edges()
    pool = [e for e in live if e in set(E_con)]
    need = _required(G, T, c)
    found: set[int] = set()
    for size in range(0, c + 1):
        targets = {k for k, lam in need.items() if lam == size}
        if not targets:
            continue
        for F in itertools.combinations(pool, size):
            label = _components_label(G, set(F), live)
            found.update(k for k in _separated_keys(label, T) if k in targets)
            if targets <= found:
                break
    return set(need) <= found


def verify_intersecting(G: MultiGraph, T: Iterable[int], c: int, E_int: Iterable[int]) -> bool:
    _check_edgeset_caps(G, c)
    T = sorted(G.resolve(T))
    live = G.live_edges()
    E_int = set(E_int)
    comp = _components_label(G, E_int, live)
    need = _required(G, T, c)
    found: set[int] = set()
    for size in range(0, c + 1):
        targets = {k for k, lam in need.items() if lam == size}
        if not targets:
            continue
        for F in itertools.combinations(live, size):
            per: dict[int, int] = {}
            for e in F:
                if e not in E_int:
                    r = comp[G.endpoints(e)[0]]
                    per[r] = per.get(r, 0) + 1
            if per and max(per.values()) > c - 1:
                continue
            label = _components_label(G, set(F), live)
            found.update(k for k in _separated_keys(label, T) if k in targets)
            if targets <= found:
                break
    return set(need) <= found


# --- dynamic connectivity ---------------------------------------------------


def naive_offline(queries: QueryLog, c: int) -> list[int]:
    """Replay the log and answer each query with a fresh bounded max-flow."""
    from collections import Counter

    verts = sorted(queries.vertices())
    live: Counter[tuple[int, int]] = Counter()
    answers = []
    for op, u, v in queries.events:
        key = (min(u, v), max(u, v))
        if op == "I":
            live[key] += 1
        elif op == "D":
            if live[key] == 0:
                raise ValueError(f"delete of absent edge {u} {v}")
            live[key] -= 1
        else:
            edges, eid = {}, 0
            for (a, b), mult in sorted(live.items()):
                for _ in range(mult):
                    edges[eid] = (a, b)
                    eid += 1
            G = MultiGraph(verts, edges, (), c)
            answers.append(thresholded_mincut(G, [u], [v], c))
    return answers


# --- cut enumeration by bitmask ---------------------------------------------

SUBSET_CAP = 20


def _side_table(G: MultiGraph, fixed0: Iterable[int], fixed1: Iterable[int]):
    """Every side A with fixed0 inside and fixed1 outside, as (sides, cut sizes)."""
    fixed0 = G.resolve(fixed0)
    fixed1 = G.resolve(fixed1)
    free = sorted(G.vertices - fixed0 - fixed1)
    if len(free) > SUBSET_CAP:
        raise ValueError(f"subset enumeration limited to {SUBSET_CAP} free vertices")
    masks = np.arange(0, 1 << len(free), dtype=np.int64)
    ones = np.ones(masks.shape, dtype=np.int16)
    zeros = np.zeros(masks.shape, dtype=np.int16)
    idx = {v: i for i, v in enumerate(free)}

    def bit(v: int) -> np.ndarray:
        if v in fixed0:
            return ones
        if v in fixed1:
            return zeros
        return ((masks >> idx[v]) & 1).astype(np.int16)

    bits = {v: bit(v) for v in G.vertices}
    cut = np.zeros(masks.shape, dtype=np.int16)
    for eid in G.live_edges():
        u, v = G.endpoints(eid)
        cut += bits[u] ^ bits[v]
    return free, masks, bits, cut


def important_cuts_bruteforce(G: MultiGraph, X: Iterable[int], Y: Iterable[int], c: int) -> list[frozenset[int]]:
    """X-sides of all important (X,Y)-cuts with at most c edges.

    Candidates are sides that equal the X-reachability set of their cut and whose
    cut edges are all needed; importance is Pareto-maximality among candidates.
    """
    X, Y = G.resolve(X), G.resolve(Y)
    free, masks, _, cut = _side_table(G, X, Y)
    sides = [X | {free[j] for j in range(len(free)) if int(m) >> j & 1} for m in masks]
    good = np.array([_is_reach_minimal(G, S, X, Y) for S in sides], dtype=bool)
    out = []
    for i in np.nonzero(good & (cut <= c))[0]:
        m = masks[i]
        dominated = good & ((masks & m) == m) & (masks != m) & (cut <= cut[i])
        if not dominated.any():
            out.append(sides[i])
    return sorted(out, key=sorted)


def _is_reach_minimal(G: MultiGraph, S: frozenset[int], X: frozenset[int], Y: frozenset[int]) -> bool:
    def reach(src, within):
        seen, stack = set(src), list(src)
        while stack:
            x = stack.pop()
            for _, y in G.adj[x]:
                if y in within and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    if reach(X, S) != S:
        return False
    outer = G.vertices - S
    to_y = reach(Y, outer)
    for e in boundary(G, S):
        u, v = G.endpoints(e)
        if (v if u in S else u) not in to_y:
            return False
    return True


def constrained_cut_bruteforce(
    G: MultiGraph, T: Iterable[int], Q0: Iterable[int], Q1: Iterable[int],
    c0: int, c1: int, l: int,
) -> frozenset[int] | None:
    """Side A0 of some valid constrained cut (smallest cut, then smallest mask), or None."""
    T = G.resolve(T)
    Q0, Q1 = G.resolve(Q0), G.resolve(Q1)
    if Q0 & Q1:
        return None
    free, masks, bits, cut = _side_table(G, Q0, Q1)
    t0 = np.zeros(masks.shape, dtype=np.int16)
    for t in T:
        t0 += bits[t]
    ok = (cut <= l) & (t0 >= c0) & ((len(T) - t0) >= c1)
    hits = np.nonzero(ok)[0]
    if hits.size == 0:
        return None
    i = min(hits, key=lambda j: (int(cut[j]), int(masks[j])))
    return Q0 | {free[j] for j in range(len(free)) if int(masks[i]) >> j & 1}


def small_cuts_bruteforce(G: MultiGraph, c: int, nu: int) -> set[frozenset[int]]:
    """Edge sets of all cuts with at most c edges having a connected side of at most nu vertices."""
    order = sorted(G.vertices)
    if len(order) > SUBSET_CAP:
        raise ValueError(f"subset enumeration limited to {SUBSET_CAP} vertices")
    out: set[frozenset[int]] = set()
    for mask in range(1, (1 << len(order)) - 1):
        S = frozenset(v for i, v in enumerate(order) if mask >> i & 1)
        if len(S) > nu:
            continue
        F = boundary(G, S)
        if len(F) > c:
            continue
        start = next(iter(S))
        seen, stack = {start}, [start]
        while stack:
            x = stack.pop()
            for _, y in G.adj[x]:
                if y in S and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) == len(S):
            out.add(F)
    return out
