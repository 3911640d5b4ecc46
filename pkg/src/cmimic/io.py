"""Plain-text graph files and sparsifier JSON.

Graph format::

    n m k c
    t_1 ... t_k          (omitted when k = 0)
    u v [w]              (m lines, 1-based vertices, w defaults to 1)

`#` starts a comment.  Edge ids are the 0-based positions of the parallel
copies in file order (a weight-w line yields min(w, c) consecutive ids).
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .graph import MultiGraph, build_graph
from .sparsifier import SparsifierResult


class FormatError(ValueError):
    pass


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].split()
        if body:
            yield lineno, body


def _ints(lineno: int, parts: list[str]) -> list[int]:
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise FormatError(f"line {lineno}: expected integers, got {' '.join(parts)!r}") from None


def parse_graph(text: str, c: int | None = None) -> MultiGraph:
    """Parse the text format; `c` overrides the header threshold."""
    it = _lines(text)
    try:
        lineno, head = next(it)
    except StopIteration:
        raise FormatError("empty graph file") from None
    if len(head) != 4:
        raise FormatError(f"line {lineno}: header must be 'n m k c'")
    n, m, k, c_file = _ints(lineno, head)
    if min(n, m, k) < 0 or c_file < 1:
        raise FormatError(f"line {lineno}: header values out of range")
    terminals: list[int] = []
    if k:
        try:
            lineno, parts = next(it)
        except StopIteration:
            raise FormatError("missing terminal line") from None
        terminals = _ints(lineno, parts)
        if len(terminals) != k:
            raise FormatError(f"line {lineno}: expected {k} terminals, got {len(terminals)}")
    edges = []
    for lineno, parts in it:
        if len(parts) not in (2, 3):
            raise FormatError(f"line {lineno}: expected 'u v [w]'")
        vals = _ints(lineno, parts)
        if not all(1 <= x <= n for x in vals[:2]):
            raise FormatError(f"line {lineno}: vertex id out of range 1..{n}")
        if vals[0] == vals[1]:
            raise FormatError(f"line {lineno}: self-loop")
        edges.append(tuple(vals))
    if len(edges) != m:
        raise FormatError(f"expected {m} edge lines, found {len(edges)}")
    try:
        return build_graph(n, edges, terminals, c or c_file)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def load_graph(path: str | Path, c: int | None = None) -> MultiGraph:
    return parse_graph(Path(path).read_text(), c)


def dumps_graph(G: MultiGraph) -> str:
    """Inverse of parse_graph for graphs on vertices 1..n; parallel copies become weights."""
    order = sorted(G.vertices)
    rank = {v: i + 1 for i, v in enumerate(order)}
    weights: dict[tuple[int, int], int] = {}
    for e in G.live_edges():
        u, v = sorted(rank[x] for x in G.endpoints(e))
        weights[(u, v)] = weights.get((u, v), 0) + 1
    lines = [f"{len(order)} {len(weights)} {len(G.terminals)} {G.c}"]
    if G.terminals:
        lines.append(" ".join(str(rank[t]) for t in sorted(G.terminals)))
    lines += [f"{u} {v} {w}" if w > 1 else f"{u} {v}" for (u, v), w in sorted(weights.items())]
    return "\n".join(lines) + "\n"


def sparsifier_to_dict(res: SparsifierResult, terminals, c: int) -> dict[str, Any]:
    H = res.graph
    ids = sorted(res.kept_edges)
    return {
        "c": c,
        "method": res.info.get("method"),
        "vertices": sorted(H.vertices),
        "terminals": sorted(terminals),
        "edges": [list(H.endpoints(e)) for e in ids],
        "kept_edge_ids": ids,
        "merge_map": {str(k): v for k, v in sorted(res.merge_map.items())},
    }


def dumps_sparsifier(res: SparsifierResult, terminals, c: int) -> str:
    return json.dumps(sparsifier_to_dict(res, terminals, c), sort_keys=True) + "\n"


def sparsifier_from_dict(data: dict[str, Any]) -> MultiGraph:
    """Rebuild the sparsifier graph; original labels resolve through merge_map."""
    try:
        merge = {int(k): int(v) for k, v in data["merge_map"].items()}
        ids = [int(e) for e in data["kept_edge_ids"]]
        pairs = [tuple(int(x) for x in uv) for uv in data["edges"]]
        if len(ids) != len(pairs):
            raise FormatError("kept_edge_ids and edges differ in length")
        return MultiGraph(
            [int(v) for v in data["vertices"]],
            dict(zip(ids, pairs)),
            [merge.get(int(t), int(t)) for t in data["terminals"]],
            int(data.get("c", 1)),
            parent=merge,
        )
    except KeyError as exc:
        raise FormatError(f"sparsifier JSON missing field {exc}") from None


def load_sparsifier(path: str | Path) -> MultiGraph:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: line {exc.lineno}: {exc.msg}") from None
    return sparsifier_from_dict(data)
