"""Existence route: refine V minus T by violating cuts, contract well-linked
pieces, and sparsify sparse-boundary pieces by exhaustive enumeration."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .graph import CutWitness, MultiGraph, boundary, max_flow_bounded, terminal_gadget
from .importantcuts import find_violating_cut_fpt, subdivided_piece
from .oracle import bipartitions, find_violating_cut_bruteforce
from .sparsifier import SparsifierResult, result_from_kept

BASE_CASE_CAP = 14

UNRESOLVED = "unresolved"
WELL_LINKED = "well-linked"
SPARSE = "sparse-boundary"

CutFinder = Callable[[MultiGraph, frozenset, int], "CutWitness | None"]

CUT_FINDERS: dict[str, CutFinder] = {
    "bruteforce": find_violating_cut_bruteforce,
    "fpt": find_violating_cut_fpt,
}


@dataclass
class PiecePartition:
    pieces: list[frozenset[int]] = field(default_factory=list)
    boundaries: list[frozenset[int]] = field(default_factory=list)
    status: list[str] = field(default_factory=list)

    def add(self, X: frozenset[int], dX: frozenset[int], status: str = UNRESOLVED) -> None:
        self.pieces.append(X)
        self.boundaries.append(dX)
        self.status.append(status)


def partition_potential(partition: PiecePartition | Iterable[int], c: int) -> int:
    """Sum over pieces of max(|dX| - 2c + 1, 0); accepts a partition or raw boundary sizes."""
    if isinstance(partition, PiecePartition):
        sizes = [len(b) for b in partition.boundaries]
    else:
        sizes = list(partition)
    return sum(max(b - 2 * c + 1, 0) for b in sizes)


def boundary_preprocess(G: MultiGraph, piece: Iterable[int]) -> tuple[MultiGraph, frozenset[int]]:
    """Subdivide every boundary edge uv (v in piece) by a new vertex w_uv.

    The half w_uv-v keeps the id of uv; the outer half u-w_uv gets a fresh id.
    Returns the whole subdivided graph and the new degree-1-inside terminals.
    """
    X = G.resolve(piece)
    dX = sorted(boundary(G, X))
    H, ws = G.add_vertices(len(dX))
    edges = dict(H.edges)
    outer = []
    for w, eid in zip(ws, dX):
        u, v = G.endpoints(eid)
        inner, out = (u, v) if u in X else (v, u)
        edges[eid] = (w, inner)
        outer.append((out, w))
    H = MultiGraph(H.vertices, edges, set(G.terminals) | set(ws), G.c,
                   parent=H.parent_map, next_eid=H.next_eid)
    H, _ = H.add_edges(outer)
    return H, frozenset(ws)


def base_case_kept(G: MultiGraph, T: Iterable[int], c: int, cap: int = BASE_CASE_CAP) -> frozenset[int]:
    """Union of one minimum cut per terminal bipartition with mincut <= c."""
    T = sorted(G.resolve(T))
    if len(T) > cap:
        raise ValueError(f"base case limited to {cap} terminals")
    kept: set[int] = set()
    for left, right in bipartitions(T):
        res = max_flow_bounded(G, left, right, c)
        if not res.is_top:
            kept |= res.witness.edges
    return frozenset(kept)


def base_case_sparsifier(G: MultiGraph, T: Iterable[int], c: int, cap: int = BASE_CASE_CAP) -> SparsifierResult:
    kept = base_case_kept(G, T, c, cap)
    return result_from_kept(G.with_terminals(T), kept, {"method": "base-case"})


def poly_sized_c_network(
    G: MultiGraph,
    T: Iterable[int] | None = None,
    c: int | None = None,
    cut_finder: str | CutFinder = "bruteforce",
) -> SparsifierResult:
    c = G.c if c is None else c
    G0 = G.with_terminals(G.terminals if T is None else T).with_c(c)
    finder = CUT_FINDERS[cut_finder] if isinstance(cut_finder, str) else cut_finder
    Gg, rename = terminal_gadget(G0)
    root = Gg.vertices - Gg.terminals
    partition = PiecePartition()
    splits: list[dict] = []
    queue = [root] if root else []
    while queue:
        queue.sort(key=lambda X: (len(boundary(Gg, X)), min(X)))
        X = queue.pop(0)
        dX = boundary(Gg, X)
        if len(dX) <= 2 * c - 1:
            partition.add(X, dX, SPARSE)
            continue
        w = finder(Gg, X, c)
        if w is None:
            partition.add(X, dX, WELL_LINKED)
            continue
        A, B = frozenset(w.side1), frozenset(w.side2)
        before = [len(boundary(Gg, Y)) for Y in queue] + [len(dX)]
        after = before[:-1] + [len(boundary(Gg, A)), len(boundary(Gg, B))]
        splits.append({
            "boundary": len(dX),
            "children": (after[-2], after[-1]),
            "potential_before": partition_potential(before + [len(b) for b in partition.boundaries], c),
            "potential_after": partition_potential(after + [len(b) for b in partition.boundaries], c),
        })
        queue += [A, B]

    inside: dict[int, int] = {}
    for i, X in enumerate(partition.pieces):
        for v in X:
            inside[v] = i
    kept: set[int] = set()
    for eid in Gg.live_edges():
        u, v = Gg.endpoints(eid)
        if inside.get(u, -1) != inside.get(v, -2):
            kept.add(eid)
    for X, st in zip(partition.pieces, partition.status):
        if st == SPARSE:
            H, wmap = subdivided_piece(Gg, X)
            kept |= base_case_kept(H, H.terminals, c)
            kept |= set(wmap.values())
    kept_g = {e for e in kept if e in G0.edges}
    info = {
        "method": "existence",
        "cut_finder": cut_finder if isinstance(cut_finder, str) else getattr(cut_finder, "__name__", "custom"),
        "partition": partition,
        "splits": splits,
        "root_boundary": len(boundary(Gg, root)) if root else 0,
        "gadget": rename,
    }
    return result_from_kept(G0, kept_g, info)
