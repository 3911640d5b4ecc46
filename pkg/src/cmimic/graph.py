"""Contractible multigraph with stable edge ids, bounded max-flow and cut helpers.

Vertices are integer labels.  Contraction is realised by a union-find over
labels, so any label that ever existed can be resolved to the vertex that
currently contains it with :meth:`MultiGraph.find`.  Edges keep the endpoints
they were created with; their current endpoints are resolved the same way.
An edge whose endpoints resolve to the same vertex is a self-loop: it is kept
as a record, ignored by cuts, and counted twice in volumes.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

EXACT_CONDUCTANCE_LIMIT = 18


class _Top:
    """Marker for a cut value that exceeds the cap (or is infinite)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "TOP"

    def __bool__(self) -> bool:
        return False


TOP = _Top()


@dataclass(frozen=True)
class CutWitness:
    edges: frozenset[int]
    side1: frozenset[int]
    side2: frozenset[int]
    terminal_split: tuple[frozenset[int], frozenset[int]]

    @property
    def value(self) -> int:
        return len(self.edges)

    def key(self) -> tuple[int, ...]:
        return tuple(sorted(self.edges))


@dataclass(frozen=True)
class FlowResult:
    value: int | _Top
    witness: CutWitness | _Top
    residual_sink_side: frozenset[int]

    @property
    def is_top(self) -> bool:
        return self.witness is TOP


class MultiGraph:
    def __init__(
        self,
        vertices: Iterable[int],
        edges: Mapping[int, tuple[int, int]],
        terminals: Iterable[int] = (),
        c: int = 1,
        parent: Mapping[int, int] | None = None,
        next_eid: int | None = None,
    ) -> None:
        if c < 1:
            raise ValueError("threshold c must be >= 1")
        self.c = int(c)
        self._parent: dict[int, int] = dict(parent) if parent else {}
        self.vertices: frozenset[int] = frozenset(self.find(v) for v in vertices)
        for v in self.vertices:
            self._parent.setdefault(v, v)
        self.edges: dict[int, tuple[int, int]] = dict(edges)
        for eid, (u, v) in self.edges.items():
            if self.find(u) not in self.vertices or self.find(v) not in self.vertices:
                raise ValueError(f"edge {eid} has an endpoint outside the vertex set")
        terms = frozenset(self.find(t) for t in terminals)
        if not terms <= self.vertices:
            raise ValueError("terminal not a vertex")
        self.terminals: frozenset[int] = terms
        top = max(self.edges, default=-1) + 1
        self.next_eid = max(top, next_eid or 0)
        self._adj: dict[int, list[tuple[int, int]]] | None = None

    # --- label resolution -------------------------------------------------

    def find(self, x: int) -> int:
        parent = self._parent
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(x, x) != root:
            parent[x], x = root, parent[x]
        return root

    def knows(self, x: int) -> bool:
        return x in self._parent

    @property
    def parent_map(self) -> dict[int, int]:
        return dict(self._parent)

    def next_vid(self) -> int:
        return max(self._parent, default=0) + 1

    # --- basic queries ----------------------------------------------------

    def endpoints(self, eid: int) -> tuple[int, int]:
        u, v = self.edges[eid]
        return self.find(u), self.find(v)

    def is_loop(self, eid: int) -> bool:
        u, v = self.endpoints(eid)
        return u == v

    def live_edges(self) -> list[int]:
        return [e for e in sorted(self.edges) if not self.is_loop(e)]

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        """Number of non-loop edges."""
        return len(self.adjacency_edge_set())

    def adjacency_edge_set(self) -> set[int]:
        return {e for lst in self.adj.values() for e, _ in lst}

    @property
    def adj(self) -> dict[int, list[tuple[int, int]]]:
        if self._adj is None:
            adj: dict[int, list[tuple[int, int]]] = {v: [] for v in self.vertices}
            for eid in sorted(self.edges):
                u, v = self.endpoints(eid)
                if u != v:
                    adj[u].append((eid, v))
                    adj[v].append((eid, u))
            self._adj = adj
        return self._adj

    def degree(self, v: int) -> int:
        """Degree ignoring self-loops."""
        return len(self.adj[self.find(v)])

    def volume_degrees(self) -> dict[int, int]:
        """Degrees with self-loops counted twice."""
        deg = {v: 0 for v in self.vertices}
        for eid in self.edges:
            u, v = self.endpoints(eid)
            deg[u] += 1
            deg[v] += 1
        return deg

    def volume(self, S: Iterable[int]) -> int:
        deg = self.volume_degrees()
        return sum(deg[v] for v in {self.find(x) for x in S})

    def resolve(self, S: Iterable[int]) -> frozenset[int]:
        return frozenset(self.find(x) for x in S)

    def is_terminal(self, v: int) -> bool:
        return self.find(v) in self.terminals

    # --- derived graphs ---------------------------------------------------

    def _derive(
        self,
        *,
        vertices: Iterable[int] | None = None,
        edges: Mapping[int, tuple[int, int]] | None = None,
        terminals: Iterable[int] | None = None,
        c: int | None = None,
        parent: Mapping[int, int] | None = None,
    ) -> MultiGraph:
        return MultiGraph(
            self.vertices if vertices is None else vertices,
            self.edges if edges is None else edges,
            self.terminals if terminals is None else terminals,
            self.c if c is None else c,
            parent=self._parent if parent is None else parent,
            next_eid=self.next_eid,
        )

    def copy(self) -> MultiGraph:
        return self._derive()

    def with_terminals(self, terminals: Iterable[int]) -> MultiGraph:
        return self._derive(terminals=self.resolve(terminals))

    def with_c(self, c: int) -> MultiGraph:
        return self._derive(c=c)

    def induced(self, S: Iterable[int], terminals: Iterable[int] | None = None) -> MultiGraph:
        """G[S] keeping edge ids; loops inside S are kept, terminals restricted."""
        S = self.resolve(S)
        edges = {e: uv for e, uv in self.edges.items() if set(self.endpoints(e)) <= S}
        terms = self.terminals & S if terminals is None else self.resolve(terminals) & S
        return self._derive(vertices=S, edges=edges, terminals=terms)

    def without_edges(self, eids: Iterable[int]) -> MultiGraph:
        drop = set(eids)
        return self._derive(edges={e: uv for e, uv in self.edges.items() if e not in drop})

    def restrict_edges(self, eids: Iterable[int]) -> MultiGraph:
        keep = set(eids)
        return self._derive(edges={e: uv for e, uv in self.edges.items() if e in keep})

    def without_loops(self) -> MultiGraph:
        return self.restrict_edges(self.live_edges())

    def add_vertices(self, k: int) -> tuple[MultiGraph, list[int]]:
        start = self.next_vid()
        new = list(range(start, start + k))
        return self._derive(vertices=set(self.vertices) | set(new)), new

    def add_edges(self, pairs: Iterable[tuple[int, int]]) -> tuple[MultiGraph, list[int]]:
        edges = dict(self.edges)
        ids = []
        eid = self.next_eid
        for u, v in pairs:
            edges[eid] = (self.find(u), self.find(v))
            ids.append(eid)
            eid += 1
        g = self._derive(edges=edges)
        g.next_eid = eid
        return g, ids

    def contract(self, eids: Iterable[int]) -> MultiGraph:
        return contract_edges(self, eids)

    def merge_vertices(self, S: Iterable[int]) -> MultiGraph:
        """Identify every vertex of S into one vertex (the smallest label)."""
        S = sorted(self.resolve(S))
        if len(S) <= 1:
            return self.copy()
        parent = dict(self._parent)
        root = S[0]
        for v in S[1:]:
            parent[v] = root
        g = MultiGraph.__new__(MultiGraph)
        _finish_merge(self, g, parent)
        return g

    def __repr__(self) -> str:
        return f"MultiGraph(n={self.n}, m={self.m}, k={len(self.terminals)}, c={self.c})"


def _finish_merge(src: MultiGraph, g: MultiGraph, parent: dict[int, int]) -> None:
    g.c = src.c
    g._parent = parent
    g.vertices = frozenset(g.find(v) for v in src.vertices)
    g.edges = dict(src.edges)
    g.terminals = frozenset(g.find(t) for t in src.terminals)
    g.next_eid = src.next_eid
    g._adj = None


# --- construction ------------------------------------------------------------


def build_graph(
    n: int,
    weighted_edges: Iterable[tuple[int, int] | tuple[int, int, int]],
    terminals: Iterable[int],
    c: int,
) -> MultiGraph:
    """Build a multigraph on vertices 1..n; weight w becomes min(w, c) parallel copies."""
    if c < 1:
        raise ValueError("threshold c must be >= 1")
    edges: dict[int, tuple[int, int]] = {}
    eid = 0
    for item in weighted_edges:
        u, v = int(item[0]), int(item[1])
        w = int(item[2]) if len(item) > 2 else 1
        if not (1 <= u <= n and 1 <= v <= n):
            raise ValueError(f"vertex id out of range in edge ({u}, {v})")
        if w < 1:
            raise ValueError(f"edge weight must be >= 1, got {w}")
        for _ in range(min(w, c)):
            edges[eid] = (u, v)
            eid += 1
    terms = set(terminals)
    for t in terms:
        if not 1 <= t <= n:
            raise ValueError(f"terminal {t} is not a vertex")
    return MultiGraph(range(1, n + 1), edges, terms, c)


def terminal_gadget(G: MultiGraph) -> tuple[MultiGraph, dict[int, int]]:
    """Degree-reduce terminals; returns the new graph and the map t -> t'."""
    heavy = sorted(t for t in G.terminals if G.degree(t) > G.c)
    if not heavy:
        return G.copy(), {}
    H, new = G.add_vertices(len(heavy))
    rename = dict(zip(heavy, new))
    H, _ = H.add_edges([(t, tp) for t, tp in rename.items() for _ in range(G.c)])
    terms = (set(G.terminals) - set(heavy)) | set(new)
    return H.with_terminals(terms), rename


def attach_terminal_gadget(G: MultiGraph) -> MultiGraph:
    return terminal_gadget(G)[0]


def contract_edges(G: MultiGraph, E_hat: Iterable[int]) -> MultiGraph:
    """Return G/E_hat; G itself is left untouched."""
    parent = dict(G._parent)
    g = MultiGraph.__new__(MultiGraph)
    g._parent = parent
    for eid in sorted(set(E_hat)):
        if eid not in G.edges:
            raise KeyError(f"unknown edge id {eid}")
        u, v = G.edges[eid]
        ru, rv = g.find(u), g.find(v)
        if ru != rv:
            lo, hi = min(ru, rv), max(ru, rv)
            parent[hi] = lo
    _finish_merge(G, g, parent)
    return g


# --- cuts ------------------------------------------------------------------


def boundary(G: MultiGraph, X: Iterable[int]) -> frozenset[int]:
    X = G.resolve(X)
    out = set()
    for v in X:
        for eid, w in G.adj[v]:
            if w not in X:
                out.add(eid)
    return frozenset(out)


def cut_from_side(G: MultiGraph, S: Iterable[int]) -> CutWitness:
    S = G.resolve(S)
    rest = G.vertices - S
    return CutWitness(
        boundary(G, S), S, rest, (G.terminals & S, G.terminals & rest)
    )


def connected_components(G: MultiGraph, within: Iterable[int] | None = None) -> list[frozenset[int]]:
    """Components (sorted by smallest vertex), optionally of G[within]."""
    allowed = G.vertices if within is None else G.resolve(within)
    seen: set[int] = set()
    comps = []
    for s in sorted(allowed):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        stack = [s]
        while stack:
            x = stack.pop()
            for _, y in G.adj[x]:
                if y in allowed and y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        comps.append(frozenset(comp))
    return comps


def is_connected(G: MultiGraph, within: Iterable[int] | None = None) -> bool:
    return len(connected_components(G, within)) <= 1


def max_flow_bounded(G: MultiGraph, A: Iterable[int], B: Iterable[int], cap: int) -> FlowResult:
    """Unit-capacity augmenting paths from A to B, stopping after cap + 1 paths."""
    A = G.resolve(A)
    B = G.resolve(B)
    if not A or not B:
        raise ValueError("source and sink sets must be nonempty")
    if A & B:
        return FlowResult(TOP, TOP, frozenset())
    adj = G.adj
    flow: dict[int, int] = {}  # +1 means one unit from the smaller endpoint

    def residual(x: int, eid: int, y: int) -> int:
        f = flow.get(eid, 0)
        return 1 - f if x < y else 1 + f

    value = 0
    while True:
        pred: dict[int, tuple[int, int] | None] = {a: None for a in A}
        queue = deque(sorted(A))
        hit = None
        while queue and hit is None:
            x = queue.popleft()
            for eid, y in adj[x]:
                if y not in pred and residual(x, eid, y) > 0:
                    pred[y] = (x, eid)
                    if y in B:
                        hit = y
                        break
                    queue.append(y)
        if hit is None:
            break
        y = hit
        while pred[y] is not None:
            x, eid = pred[y]
            flow[eid] = flow.get(eid, 0) + (1 if x < y else -1)
            y = x
        value += 1
        if value > cap:
            return FlowResult(TOP, TOP, frozenset())
    source_side = frozenset(pred)
    # vertices that can still reach B in the residual graph
    sink_side = set(B)
    queue = deque(sorted(B))
    while queue:
        z = queue.popleft()
        for eid, y in adj[z]:
            if y not in sink_side and residual(y, eid, z) > 0:
                sink_side.add(y)
                queue.append(y)
    witness = cut_from_side(G, source_side)
    assert witness.value == value
    return FlowResult(value, witness, frozenset(sink_side))


def thresholded_mincut(G: MultiGraph, A: Iterable[int], B: Iterable[int], c: int) -> int:
    res = max_flow_bounded(G, A, B, c)
    return c if res.is_top else min(c, int(res.value))


def sparse_certificate(G: MultiGraph, c: int | None = None) -> MultiGraph:
    """Union of c successive maximal spanning forests."""
    c = G.c if c is None else c
    remaining = G.live_edges()
    chosen: list[int] = []
    for _ in range(c):
        uf = {v: v for v in G.vertices}

        def root(x: int) -> int:
            while uf[x] != x:
                uf[x] = uf[uf[x]]
                x = uf[x]
            return x

        rest = []
        for eid in remaining:
            u, v = G.endpoints(eid)
            ru, rv = root(u), root(v)
            if ru != rv:
                uf[ru] = rv
                chosen.append(eid)
            else:
                rest.append(eid)
        remaining = rest
        if not remaining:
            break
    return G.restrict_edges(chosen)


# --- conductance ---------------------------------------------------------


def conductance(G: MultiGraph, S: Iterable[int]) -> Fraction:
    S = G.resolve(S)
    if not S or S >= G.vertices:
        raise ValueError("S must be a nonempty proper subset of V")
    deg = G.volume_degrees()
    vs = sum(deg[v] for v in S)
    vr = sum(deg[v] for v in G.vertices - S)
    denom = min(vs, vr)
    if denom == 0:
        raise ValueError("conductance undefined: a side has zero volume")
    return Fraction(len(boundary(G, S)), denom)


def _mask_tables(G: MultiGraph, order: list[int]):
    """Cut sizes and volumes for every subset not containing order[-1]."""
    idx = {v: i for i, v in enumerate(order)}
    k = len(order) - 1
    masks = np.arange(1, 1 << k, dtype=np.int64)
    bits = [((masks >> i) & 1).astype(np.int32) for i in range(k)]
    zero = np.zeros_like(masks, dtype=np.int32)
    cut = np.zeros(masks.shape, dtype=np.int32)
    for eid in G.live_edges():
        u, v = G.endpoints(eid)
        bu = bits[idx[u]] if idx[u] < k else zero
        bv = bits[idx[v]] if idx[v] < k else zero
        cut += bu ^ bv
    deg = G.volume_degrees()
    vol = np.zeros(masks.shape, dtype=np.int64)
    for v in order[:k]:
        if deg[v]:
            vol += deg[v] * bits[idx[v]]
    return masks, cut, vol


def min_conductance_cut(G: MultiGraph) -> tuple[Fraction, frozenset[int]] | None:
    """Exact minimum-conductance side; None if no cut has positive volumes on both sides."""
    order = sorted(G.vertices)
    if len(order) > EXACT_CONDUCTANCE_LIMIT:
        raise ValueError(f"exact conductance limited to {EXACT_CONDUCTANCE_LIMIT} vertices")
    if len(order) < 2:
        return None
    masks, cut, vol = _mask_tables(G, order)
    total = sum(G.volume_degrees().values())
    denom = np.minimum(vol, total - vol)
    ok = denom > 0
    if not ok.any():
        return None
    ratio = np.where(ok, cut / np.where(ok, denom, 1), np.inf)
    best = float(ratio.min())
    cand = np.nonzero(ratio <= best + 1e-12)[0]
    val, pos = min((Fraction(int(cut[i]), int(denom[i])), int(i)) for i in cand)
    mask = int(masks[pos])
    side = frozenset(order[i] for i in range(len(order) - 1) if mask >> i & 1)
    return val, side


def graph_conductance_exact(G: MultiGraph) -> Fraction:
    res = min_conductance_cut(G)
    if res is None:
        raise ValueError("conductance undefined for this graph")
    return res[0]
