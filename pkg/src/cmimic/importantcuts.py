"""Important cuts, constrained cuts and the FPT violating-cut finder.

A constrained cut for (Q0, Q1, c0, c1, l) is a partition (A0, A1) of the vertex
set with Q0 inside A0, Q1 inside A1, at least cj terminals in Aj and at most l
crossing edges.  Sides may be empty when the constraints allow it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .graph import CutWitness, MultiGraph, boundary, cut_from_side, max_flow_bounded

CONSTRAINED_CAP = 4


@dataclass(frozen=True)
class ConstrainedCutSpec:
    Q0: frozenset[int]
    Q1: frozenset[int]
    c0: int
    c1: int
    l: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "Q0", frozenset(self.Q0))
        object.__setattr__(self, "Q1", frozenset(self.Q1))
        if self.Q0 & self.Q1:
            raise ValueError("Q0 and Q1 must be disjoint")
        if min(self.c0, self.c1, self.l) < 0:
            raise ValueError("requirements and budget must be non-negative")


@dataclass(frozen=True)
class CutProfileVector:
    slots: tuple[tuple[int, int], ...]


# --- important cuts ---------------------------------------------------------


def _important_candidates(
    G: MultiGraph, X: frozenset[int], Y: frozenset[int], k: int,
    removed: frozenset[int], seen: set, out: set[frozenset[int]],
) -> None:
    key = (X, removed, k)
    if key in seen or k < 0:
        return
    seen.add(key)
    H = G.without_edges(removed) if removed else G
    res = max_flow_bounded(H, X, Y, k)
    if res.is_top:
        return
    R = H.vertices - res.residual_sink_side
    out.add(R)
    if res.value == 0:
        return
    eid = min(boundary(H, R))
    u, v = H.endpoints(eid)
    if u not in R:
        u, v = v, u
    if v not in Y:
        _important_candidates(G, R | {v}, Y, k, removed, seen, out)
    _important_candidates(G, R, Y, k - 1, removed | {eid}, seen, out)


def _reach(G: MultiGraph, X: frozenset[int], within: frozenset[int]) -> frozenset[int]:
    seen = set(X)
    stack = list(X)
    while stack:
        x = stack.pop()
        for _, y in G.adj[x]:
            if y in within and y not in seen:
                seen.add(y)
                stack.append(y)
    return frozenset(seen)


def is_minimal_cut(G: MultiGraph, S: Iterable[int], X: Iterable[int], Y: Iterable[int]) -> bool:
    """S is the X-reachability set of its cut and no cut edge is redundant."""
    S, X, Y = G.resolve(S), G.resolve(X), G.resolve(Y)
    if not X <= S or S & Y or _reach(G, X, S) != S:
        return False
    outer = G.vertices - S
    to_y = _reach(G, Y, outer)
    return all(y in to_y for e in boundary(G, S) for y in G.endpoints(e) if y in outer)


def is_important(G: MultiGraph, S: Iterable[int], Y: Iterable[int]) -> bool:
    """No cut with a strictly larger reachability set and at most as many edges.

    Only outer endpoints of cut edges need testing: a dominating reachability
    set must contain one of them.
    """
    S = G.resolve(S)
    Y = G.resolve(Y)
    cut = boundary(G, S)
    size = len(cut)
    outer = sorted({y for e in cut for y in G.endpoints(e) if y not in S and y not in Y})
    for v in outer:
        if not max_flow_bounded(G, S | {v}, Y, size).is_top:
            return False
    return True


def enumerate_important_cuts(G: MultiGraph, X: Iterable[int], Y: Iterable[int], c: int) -> list[CutWitness]:
    """All important (X,Y)-cuts with at most c edges, side1 being the X-side.

    Cuts are edge-minimal separators whose X-side is the set reachable from X
    after removing the cut edges.
    """
    X = G.resolve(X)
    Y = G.resolve(Y)
    if not X or not Y:
        raise ValueError("X and Y must be nonempty")
    if X & Y:
        raise ValueError("X and Y must be disjoint")
    cands: set[frozenset[int]] = set()
    _important_candidates(G, X, Y, c, frozenset(), set(), cands)
    out = []
    for S in {_reach(G, X, S) for S in cands}:
        w = cut_from_side(G, S)
        if w.value <= c and is_minimal_cut(G, S, X, Y) and is_important(G, S, Y):
            out.append(w)
    out.sort(key=lambda w: (w.value, sorted(w.side1)))
    return out


# --- constrained cuts ------------------------------------------------------


def _plain(G: MultiGraph, Q0: frozenset[int], Q1: frozenset[int], l: int) -> frozenset[int] | None:
    if not Q1:
        return G.vertices
    if not Q0:
        return frozenset()
    res = max_flow_bounded(G, Q0, Q1, l)
    if res.is_top:
        return None
    return res.witness.side1


def _valid(G: MultiGraph, T: frozenset[int], A0: frozenset[int], Q0, Q1, c0: int, c1: int, l: int) -> bool:
    A1 = G.vertices - A0
    return (
        Q0 <= A0 and Q1 <= A1 and len(T & A0) >= c0 and len(T & A1) >= c1
        and len(boundary(G, A0)) <= l
    )


def _profiles(need: int, c: int, budget: int):
    """Non-increasing slot lists (kappa, l_i) with sum kappa >= need."""
    kinds = [(k, b) for k in range(c - 1, 0, -1) for b in range(budget, -1, -1)]

    def rec(start: int, slots: list, ksum: int, bsum: int):
        if ksum >= need:
            yield tuple(slots)
            return
        if len(slots) == c:
            return
        for j in range(start, len(kinds)):
            k, b = kinds[j]
            if bsum + b <= budget and ksum + k <= 2 * c:
                slots.append((k, b))
                yield from rec(j, slots, ksum + k, bsum + b)
                slots.pop()

    yield from rec(0, [], 0, 0)


def _base(G: MultiGraph, T: frozenset[int], Q0: frozenset[int], Q1: frozenset[int],
          creq: int, l: int) -> frozenset[int] | None:
    """One-sided case: only A0 carries a terminal requirement."""
    if l < 0:
        return None
    if creq == 0:
        return _plain(G, Q0, Q1, l)
    if not Q1:
        return G.vertices if len(T) >= creq else None
    if len(T - Q1) < creq:
        return None
    Ga = G
    aux: list[int] = []
    q = sorted(Q0)
    if len(q) > 1:
        Ga, aux = G.add_edges(zip(q, q[1:]))

    def side(S: frozenset[int]) -> tuple[frozenset[int], frozenset[int], int]:
        return S, T & S, len(boundary(Ga, S))

    if Q0:
        C0s = [side(w.side1) for w in enumerate_important_cuts(Ga, Q0, Q1, l)]
    else:
        C0s = [side(frozenset())]
    Cs: dict[frozenset[int], tuple] = {}
    for t in sorted(T - Q1):
        for w in enumerate_important_cuts(Ga, {t}, Q1, l):
            Cs.setdefault(w.side1, side(w.side1))
    C = sorted(Cs.values(), key=lambda x: (x[2], sorted(x[0])))

    def ok(A: frozenset[int]) -> bool:
        return _valid(Ga, T, A, Q0, Q1, creq, 0, l)

    for C0 in C0s:
        if len(C0[1]) >= creq:
            return C0[0]
    for C0 in C0s:
        for C1 in C:
            if not (C0[1] & C1[1]) and len(C0[1]) + len(C1[1]) >= creq and ok(C0[0] | C1[0]):
                return C0[0] | C1[0]
    for C0 in C0s:
        need = creq - len(C0[1])
        budget = l - C0[2]
        if budget < 0:
            continue
        for prof in _profiles(need, creq, budget):
            S = set(C0[1])
            for _ in range(creq + 1):
                for kappa, li in prof:
                    for cand in C:
                        if len(cand[1]) == kappa and cand[2] == li and not (cand[0] & S):
                            S |= cand[1]
                            break
            CS = [x for x in C if x[0] & S]
            found = _pick_slots(prof, CS, C0, ok)
            if found is not None:
                return found
    return None


def _pick_slots(prof, CS, C0, ok) -> frozenset[int] | None:
    per_slot = [[x for x in CS if len(x[1]) == k and x[2] == b] for k, b in prof]

    def rec(i: int, used: frozenset[int], acc: frozenset[int]):
        if i == len(prof):
            return acc if ok(acc) else None
        for x in per_slot[i]:
            if not (x[1] & used):
                got = rec(i + 1, used | x[1], acc | x[0])
                if got is not None:
                    return got
        return None

    return rec(0, C0[1], C0[0])


def _solve(G: MultiGraph, T: frozenset[int], Q0: frozenset[int], Q1: frozenset[int],
           c0: int, c1: int, l: int) -> frozenset[int] | None:
    """Return A0 of a valid constrained cut, or None.  Q0/Q1 may hold terminals here."""
    if l < 0 or Q0 & Q1:
        return None
    if c1 == 0:
        return _base(G, T, Q0, Q1, c0, l)
    if c0 == 0:
        A1 = _base(G, T, Q1, Q0, c1, l)
        return None if A1 is None else G.vertices - A1
    if len(T - Q1) < c0 or len(T - Q0) < c1 or len(T) < c0 + c1:
        return None
    # minimum cut with Q0/Q1 respected and a terminal on each side
    pivot = min(T - Q1 - Q0) if T - Q1 - Q0 else None
    best = None
    pairs = []
    if pivot is None:
        pairs = [(a, b) for a in sorted(T & Q0) for b in sorted(T & Q1)][:1]
    else:
        pairs = [(pivot, t) for t in sorted(T - Q0 - {pivot})]
        pairs += [(t, pivot) for t in sorted(T - Q1 - {pivot})]
    for a, b in pairs:
        res = max_flow_bounded(G, Q0 | {a}, Q1 | {b}, l)
        if res.is_top:
            continue
        if best is None or res.value < best.value:
            best = res
    if best is None:
        return None
    A0p = best.witness.side1
    A1p = G.vertices - A0p
    T0, T1 = T & A0p, T & A1p
    if len(T0) >= c0 and len(T1) >= c1:
        return A0p
    if len(T0) < c0:
        return _reduce(G, T, Q0, Q1, c0, c1, l, A0p)
    A1 = _reduce(G, T, Q1, Q0, c1, c0, l, A1p)
    return None if A1 is None else G.vertices - A1


def _reduce(G, T, Q0, Q1, c0, c1, l, A0p) -> frozenset[int] | None:
    """Guess the small side's terminal split and boundary sides, recurse on the rest."""
    A1p = G.vertices - A0p
    crossing = sorted(boundary(G, A0p))
    Bv = {x for e in crossing for x in G.endpoints(e)}
    T0 = T & A0p
    guessed = Bv | T0
    free = sorted(guessed - Q0 - Q1)
    G0 = G.induced(A0p)
    G1 = G.induced(A1p)
    T1 = T & A1p
    for bits in itertools.product((0, 1), repeat=len(free)):
        Z1 = (guessed & Q1) | {v for v, b in zip(free, bits) if b}
        Z0 = guessed - Z1
        cost = sum(1 for e in crossing if (G.endpoints(e)[0] in Z1) != (G.endpoints(e)[1] in Z1))
        budget = l - cost
        if budget < 0:
            continue
        S0 = (Q0 | Z0) & A0p
        S1 = Z1 & A0p
        if not S1:
            zero0 = A0p
        elif not S0:
            zero0 = frozenset()
        else:
            res = max_flow_bounded(G0, S0, S1, budget)
            if res.is_top:
                continue
            zero0 = res.witness.side1
        e0 = len(boundary(G0, zero0)) if zero0 and zero0 != A0p else 0
        rest = budget - e0
        if rest < 0:
            continue
        c0n = max(c0 - len(T & zero0), 0)
        c1n = max(c1 - len(T0 - zero0), 0)
        Q0n = frozenset(Z0 & A1p)
        Q1n = frozenset(Q1 | (Z1 & A1p))
        sub = _solve(G1, T1, Q0n, Q1n, c0n, c1n, rest)
        if sub is None:
            continue
        A0 = frozenset(zero0 | sub)
        if _valid(G, T, A0, Q0, Q1, c0, c1, l):
            return A0
    return None


def _witness(G: MultiGraph, A0: frozenset[int]) -> CutWitness:
    return cut_from_side(G, A0)


def constrained_cut(G: MultiGraph, T: Iterable[int], query: ConstrainedCutSpec,
                    cap: int = CONSTRAINED_CAP) -> CutWitness | None:
    T = G.resolve(T)
    if max(query.c0, query.c1, query.l) > cap:
        raise ValueError(f"constrained cut limited to max(c0, c1, l) <= {cap}")
    Q0, Q1 = G.resolve(query.Q0), G.resolve(query.Q1)
    if (Q0 | Q1) & T:
        raise ValueError("Q0 and Q1 must not contain terminals")
    A0 = _solve(G, T, Q0, Q1, query.c0, query.c1, query.l)
    return None if A0 is None else _witness(G, A0)


def constrained_cut_base(G: MultiGraph, T: Iterable[int], Q0: Iterable[int], Q1: Iterable[int],
                         c_req: int, l: int, cap: int = CONSTRAINED_CAP) -> CutWitness | None:
    """One-sided constrained cut: |A0 ∩ T| >= c_req, no requirement on A1."""
    T = G.resolve(T)
    Q0, Q1 = G.resolve(Q0), G.resolve(Q1)
    if max(c_req, l) > cap:
        raise ValueError(f"constrained cut limited to max(c_req, l) <= {cap}")
    if (Q0 | Q1) & T:
        raise ValueError("Q0 and Q1 must not contain terminals")
    if Q0 & Q1:
        raise ValueError("Q0 and Q1 must be disjoint")
    A0 = _base(G, T, Q0, Q1, c_req, l)
    return None if A0 is None else _witness(G, A0)


# --- violating cuts ------------------------------------------------------------


def subdivided_piece(G: MultiGraph, X: Iterable[int]) -> tuple[MultiGraph, dict[int, int]]:
    """G[X] plus one pendant terminal w per boundary edge uv (v in X).

    The pendant edge w-v reuses the id of the boundary edge it stands for.
    Returns the graph and the map w -> boundary edge id.
    """
    X = G.resolve(X)
    dX = sorted(boundary(G, X))
    H = G.induced(X, terminals=())
    H, ws = H.add_vertices(len(dX))
    edges = dict(H.edges)
    for w, eid in zip(ws, dX):
        u, v = G.endpoints(eid)
        edges[eid] = (w, u if u in X else v)
    H = MultiGraph(H.vertices, edges, ws, H.c, parent=H.parent_map, next_eid=H.next_eid)
    return H, dict(zip(ws, dX))


def find_violating_cut_fpt(G: MultiGraph, X: Iterable[int], c: int,
                           cap: int = CONSTRAINED_CAP) -> CutWitness | None:
    X = G.resolve(X)
    if c > cap:
        raise ValueError(f"FPT violating-cut finder limited to c <= {cap}")
    if len(X) < 2:
        return None
    H, _ = subdivided_piece(G, X)
    T = H.terminals
    for l in range(0, c):
        A0 = _solve(H, T, frozenset(), frozenset(), l + 1, l + 1, l)
        if A0 is None:
            continue
        A = A0 & X
        B = X - A
        inner = frozenset(e for e in boundary(G, A) if set(G.endpoints(e)) <= X)
        return CutWitness(inner, A, B, (G.terminals & A, G.terminals & B))
    return None
