"""Efficient route: expander decomposition, small-cut enumeration, the
partition/cut/edge index and the repeated decompose-and-sparsify loop."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from .graph import (
    EXACT_CONDUCTANCE_LIMIT,
    CutWitness,
    MultiGraph,
    boundary,
    connected_components,
    contract_edges,
    cut_from_side,
    min_conductance_cut,
)
from .oracle import tc_equivalent
from .sparsifier import SparsifierResult, result_from_kept

PARANOID_TERMINAL_CAP = 12


@dataclass
class Decomposition:
    pieces: list[frozenset[int]]
    inter_cluster_edges: frozenset[int]
    target_phi: Fraction
    verified: list[bool]
    piece_phi: list[Fraction | None]

    @property
    def unverified(self) -> list[frozenset[int]]:
        return [p for p, ok in zip(self.pieces, self.verified) if not ok]


# --- expander decomposition --------------------------------------------------


def _sweep_cut(G: MultiGraph) -> tuple[Fraction, frozenset[int]] | None:
    """Best prefix of the second eigenvector of the normalized Laplacian."""
    order = sorted(G.vertices)
    idx = {v: i for i, v in enumerate(order)}
    n = len(order)
    A = np.zeros((n, n))
    for eid in G.live_edges():
        u, v = G.endpoints(eid)
        A[idx[u], idx[v]] += 1
        A[idx[v], idx[u]] += 1
    deg = G.volume_degrees()
    d = np.array([deg[v] for v in order], dtype=float)
    if (d == 0).any():
        return None
    dinv = 1.0 / np.sqrt(d)
    L = np.eye(n) - dinv[:, None] * A * dinv[None, :]
    _, vecs = np.linalg.eigh(L)
    f = vecs[:, 1] * dinv
    ranked = [order[i] for i in np.argsort(f, kind="stable")]
    total = d.sum()
    best = None
    S: set[int] = set()
    cut = 0
    vol = 0
    for v in ranked[:-1]:
        for _, w in G.adj[v]:
            cut += -1 if w in S else 1
        S.add(v)
        vol += deg[v]
        denom = min(vol, total - vol)
        if denom > 0:
            val = Fraction(cut, int(denom))
            if best is None or val < best[0]:
                best = (val, frozenset(S))
    return best


def expander_decompose(G: MultiGraph, phi: Fraction | float, exact_limit: int = EXACT_CONDUCTANCE_LIMIT) -> Decomposition:
    """Recursively split along cuts of conductance below phi.

    Components with at most `exact_limit` vertices are searched exhaustively,
    so surviving pieces are certified; larger ones use a spectral sweep and are
    flagged unverified when the sweep finds nothing.
    """
    phi = Fraction(phi).limit_denominator(10**9)
    if not 0 < phi <= 1:
        raise ValueError("phi must lie in (0, 1]")
    pieces: list[frozenset[int]] = []
    verified: list[bool] = []
    piece_phi: list[Fraction | None] = []
    stack = [frozenset(G.vertices)]
    while stack:
        S = stack.pop()
        comps = connected_components(G, S)
        if len(comps) > 1:
            stack.extend(reversed(comps))
            continue
        if len(S) == 1:
            pieces.append(S)
            verified.append(True)
            piece_phi.append(None)
            continue
        H = G.induced(S)
        if len(S) <= exact_limit:
            res = min_conductance_cut(H)
            exact = True
        else:
            res = _sweep_cut(H)
            exact = False
        if res is not None and res[0] < phi:
            side = res[1]
            stack.extend([S - side, side])
            continue
        pieces.append(S)
        verified.append(exact)
        piece_phi.append(res[0] if (exact and res is not None) else None)
    order = sorted(range(len(pieces)), key=lambda i: min(pieces[i]))
    pieces = [pieces[i] for i in order]
    verified = [verified[i] for i in order]
    piece_phi = [piece_phi[i] for i in order]
    owner = {v: i for i, P in enumerate(pieces) for v in P}
    inter = frozenset(
        e for e in G.live_edges() if owner[G.endpoints(e)[0]] != owner[G.endpoints(e)[1]]
    )
    return Decomposition(pieces, inter, phi, verified, piece_phi)


# --- small-cut enumeration --------------------------------------------------


def enumerate_small_cuts(G: MultiGraph, c: int, nu: int, starts: Iterable[int] | None = None) -> list[CutWitness]:
    """Every cut of at most c edges having a connected side with at most nu vertices.

    Branches on the DFS-tree edges of the explored region, so the recursion
    depth is at most c; results are deduplicated by edge set.
    """
    nu = min(nu, G.n - 1)
    found: dict[frozenset[int], CutWitness] = {}
    if nu < 1:
        return []
    for u in sorted(G.vertices if starts is None else G.resolve(starts)):
        seen: set[frozenset[int]] = set()

        def rec(removed: frozenset[int]) -> None:
            if removed in seen:
                return
            seen.add(removed)
            comp, tree, complete = _explore_full(G, u, removed, nu)
            if complete and comp != G.vertices:
                F = boundary(G, comp)
                if len(F) <= c and F not in found:
                    found[F] = cut_from_side(G, comp)
            if len(removed) < c:
                for eid in tree:
                    rec(removed | {eid})

        rec(frozenset())
    return sorted(found.values(), key=lambda w: (w.value, w.key()))


def _explore_full(G: MultiGraph, u: int, removed: frozenset[int], nu: int):
    seen = {u}
    tree: list[int] = []
    stack = [u]
    while stack:
        x = stack.pop()
        for eid, y in G.adj[x]:
            if eid in removed or y in seen:
                continue
            seen.add(y)
            tree.append(eid)
            if len(seen) > nu:
                return frozenset(seen), tree, False
            stack.append(y)
    return frozenset(seen), tree, True


def close_under_disjoint_unions(G: MultiGraph, cuts: Iterable[CutWitness], c: int) -> list[CutWitness]:
    """Add every union of pairwise edge-disjoint cuts with at most c edges in total."""
    base = {w.edges: w.side1 for w in cuts}
    atoms = sorted(base.items(), key=lambda kv: sorted(kv[0]))
    out = dict(base)
    frontier = list(base.items())
    while frontier:
        nxt = []
        for F, S in frontier:
            for F2, S2 in atoms:
                if len(F) + len(F2) > c or F & F2:
                    continue
                U = F | F2
                if U in out:
                    continue
                side = S ^ S2
                out[U] = side
                nxt.append((U, side))
        frontier = nxt
    return sorted((cut_from_side(G, S) for S in out.values()), key=lambda w: (w.value, w.key()))


# --- cut index ------------------------------------------------------------


@dataclass
class CutIndex:
    terminals: tuple[int, ...]
    P: dict[frozenset[int], set[int]] = field(default_factory=dict)
    C: dict[int, tuple[frozenset[int], frozenset[int]]] = field(default_factory=dict)
    E0: dict[int, set[int]] = field(default_factory=dict)

    def alive_cuts(self, p: frozenset[int]) -> set[int]:
        return self.P[p]

    def neighbourhood(self, e: int) -> set[int]:
        return set(self.E0.get(e, ()))

    def remove_cuts(self, cids: Iterable[int]) -> None:
        for cid in cids:
            edges, p = self.C.pop(cid)
            self.P[p].discard(cid)
            for e in edges:
                self.E0[e].discard(cid)


def _partition_key(side: frozenset[int], T: tuple[int, ...]) -> frozenset[int] | None:
    left = frozenset(t for t in T if t in side)
    if not left or len(left) == len(T):
        return None
    return left if T[0] in left else frozenset(T) - left


def build_cut_index(G: MultiGraph, T: Iterable[int], c: int, cuts: Iterable[CutWitness]) -> CutIndex:
    """Keep terminal-separating cuts of minimum value per terminal bipartition."""
    Tt = tuple(sorted(G.resolve(T)))
    groups: dict[frozenset[int], list[frozenset[int]]] = {}
    best: dict[frozenset[int], int] = {}
    for w in cuts:
        F = boundary(G, w.side1)
        if len(F) > c:
            continue
        p = _partition_key(G.resolve(w.side1), Tt)
        if p is None:
            continue
        if p not in best or len(F) < best[p]:
            best[p] = len(F)
            groups[p] = []
        if len(F) == best[p] and F not in groups[p]:
            groups[p].append(F)
    index = CutIndex(Tt)
    cid = 0
    for p in sorted(groups, key=lambda s: sorted(s)):
        index.P[p] = set()
        for F in sorted(groups[p], key=sorted):
            index.C[cid] = (F, p)
            index.P[p].add(cid)
            for e in F:
                index.E0.setdefault(e, set()).add(cid)
            cid += 1
    return index


def is_contractible(index: CutIndex, e: int) -> bool:
    N = index.neighbourhood(e)
    for cid in N:
        p = index.C[cid][1]
        if index.P[p] <= N:
            return False
    return True


def contract_edge_and_update(G: MultiGraph, index: CutIndex, e: int) -> tuple[MultiGraph, bool]:
    """Contract e when the index allows it; returns the (possibly new) graph and whether it contracted."""
    if e not in G.edges or G.is_loop(e):
        raise KeyError(f"edge {e} is not a live edge")
    if not is_contractible(index, e):
        return G, False
    index.remove_cuts(index.neighbourhood(e))
    return contract_edges(G, [e]), True


# --- phi-sparsify -----------------------------------------------------------


def complete_min_cut_family(G: MultiGraph, c: int, exact_limit: int = EXACT_CONDUCTANCE_LIMIT) -> tuple[list[CutWitness], dict]:
    """All cuts of at most c edges of a connected graph, via bonds plus disjoint unions.

    Bonds have both sides connected; the smaller-volume side of a bond of size
    at most c has at most c / conductance vertices, which bounds the search.
    """
    n = G.n
    info: dict = {}
    if n <= exact_limit:
        res = min_conductance_cut(G)
        phi = res[0] if res else None
    else:
        phi = None
    if phi is not None and phi > 0:
        nu = min(n - 1, math.floor(c / phi))
        info["nu"] = nu
        info["piece_phi"] = phi
    else:
        nu = n - 1
        info["nu"] = nu
    starts = [min(G.vertices)] if nu >= n - 1 else None
    bonds = enumerate_small_cuts(G, c, nu, starts)
    return close_under_disjoint_unions(G, bonds, c), info


def phi_sparsify(
    G: MultiGraph,
    T: Iterable[int] | None = None,
    c: int | None = None,
    phi: Fraction | float | None = None,
    paranoid: bool = False,
    exact_limit: int = EXACT_CONDUCTANCE_LIMIT,
) -> SparsifierResult:
    """Contract every edge the min-cut index allows, component by component.

    `phi` is the decomposition target and only reported; the enumeration
    bound comes from the piece's exact conductance when it is small enough to
    certify, and is exhaustive otherwise.
    """
    c = G.c if c is None else c
    T = G.terminals if T is None else G.resolve(T)
    work = G.with_terminals(T).with_c(c)
    contracted: list[int] = []
    findings: list[dict] = []
    comp_info = []
    for K in connected_components(work):
        TK = T & K
        inner = sorted(e for e in work.edges if work.endpoints(e)[0] in K and not work.is_loop(e))
        if len(TK) <= 1:
            contracted += inner
            continue
        GK = work.induced(K)
        cuts, info = complete_min_cut_family(GK, c, exact_limit)
        index = build_cut_index(GK, TK, c, cuts)
        info.update(cuts=len(cuts), partitions=len(index.P))
        comp_info.append(info)
        for e in inner:
            if GK.is_loop(e):
                continue
            if not is_contractible(index, e):
                continue
            if paranoid and len(TK) <= PARANOID_TERMINAL_CAP:
                after = contract_edges(GK, [e])
                check = tc_equivalent(GK, after, TK, c)
                if not check:
                    findings.append({"edge": e, "counterexample": check.counterexample})
                    continue
            GK, _ = contract_edge_and_update(GK, index, e)
            contracted.append(e)
    kept = [e for e in work.edges if e not in set(contracted)]
    res = result_from_kept(work, kept, {
        "method": "phi-sparsify",
        "phi": phi,
        "contracted": contracted,
        "components": comp_info,
        "paranoid_findings": findings,
    })
    return res


# --- outer loop -----------------------------------------------------------


def default_phi(n: int, c: int, C_prime: float = 1.0) -> Fraction:
    logn = max(1, math.ceil(math.log2(max(n, 2))))
    return Fraction(1, 1) / Fraction(4 * C_prime * c**4 * logn**3).limit_denominator(10**6)


def resolve_phi(phi_policy, n: int, c: int, C_prime: float = 1.0) -> Fraction:
    if phi_policy in (None, "default", "auto"):
        return default_phi(n, c, C_prime)
    if isinstance(phi_policy, tuple) and phi_policy[0] == "fixed":
        return Fraction(phi_policy[1]).limit_denominator(10**9)
    return Fraction(phi_policy).limit_denominator(10**9)


def efficient_poly_sized(
    G: MultiGraph,
    T: Iterable[int] | None = None,
    c: int | None = None,
    phi_policy="default",
    C_prime: float = 1.0,
    max_iter: int = 64,
    paranoid: bool = False,
) -> SparsifierResult:
    c = G.c if c is None else c
    G0 = G.with_terminals(G.terminals if T is None else T).with_c(c)
    phi = resolve_phi(phi_policy, G0.n, c, C_prime)
    cur = G0
    contracted: set[int] = set()
    trace = [cur.m]
    passes = []
    findings = []
    for _ in range(max_iter):
        dec = expander_decompose(cur, phi)
        promoted = {x for e in dec.inter_cluster_edges for x in cur.endpoints(e)}
        step: list[int] = []
        for P in dec.pieces:
            TP = (G0.resolve(cur.terminals) | promoted) & P
            piece = cur.induced(P, terminals=TP)
            res = phi_sparsify(piece, TP, c, phi, paranoid=paranoid)
            step += res.info["contracted"]
            findings += res.info["paranoid_findings"]
        nxt = contract_edges(cur, step)
        passes.append({
            "pieces": len(dec.pieces),
            "inter_cluster": len(dec.inter_cluster_edges),
            "unverified": len(dec.unverified),
            "edges_before": cur.m,
            "edges_after": nxt.m,
        })
        if nxt.m < cur.m:
            contracted |= set(step)
            cur = nxt
            trace.append(cur.m)
        else:
            break
    kept = [e for e in G0.edges if e not in contracted]
    return result_from_kept(G0, kept, {
        "method": "efficient",
        "phi": phi,
        "edge_trace": trace,
        "passes": passes,
        "paranoid_findings": findings,
    })
