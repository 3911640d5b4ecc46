"""Result container shared by every sparsifier construction."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable

from .graph import MultiGraph, contract_edges


@dataclass
class SparsifierResult:
    graph: MultiGraph
    kept_edges: frozenset[int]
    merge_map: dict[int, int]
    info: dict[str, Any] = field(default_factory=dict)

    @property
    def size(self) -> int:
        """Non-loop edges of the output graph."""
        return self.graph.m


def result_from_kept(G: MultiGraph, kept: Iterable[int], info: dict[str, Any] | None = None) -> SparsifierResult:
    """Contract every edge of G outside `kept` and package the outcome."""
    kept = set(kept)
    H = contract_edges(G, [e for e in G.edges if e not in kept])
    alive = frozenset(e for e in kept if e in H.edges and not H.is_loop(e))
    merge = {v: H.find(v) for v in sorted(G.vertices)}
    return SparsifierResult(H, alive, merge, dict(info or {}))


def identity_sparsifier(G: MultiGraph, T: Iterable[int] | None = None, c: int | None = None) -> SparsifierResult:
    return result_from_kept(G, G.live_edges(), {"method": "identity"})
