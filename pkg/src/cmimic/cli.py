"""Command-line entry point: `cmimic <subcommand> ...` (also `python3 -m cmimic`)."""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from .dynacon import identity_fn, offline_connectivity
from .expander import efficient_poly_sized, enumerate_small_cuts, expander_decompose
from .graph import MultiGraph
from .instances import random_instance
from .intersect import (
    STRATEGIES,
    get_containing_edges,
    mimicking_via_containment,
    recursive_nontrivial_cuts,
    recursive_terminal_cuts,
    recursive_terminal_cuts_fast,
)
from .io import FormatError, dumps_sparsifier, load_graph, load_sparsifier
from .oracle import tc_equivalent
from .querylog import QueryLog
from .welllinked import CUT_FINDERS, poly_sized_c_network

METHODS = ("existence", "efficient", "containment")


@dataclass
class RunManifest:
    subcommand: str
    parameters: dict[str, Any]
    input_digests: dict[str, str] = field(default_factory=dict)
    output_digest: str = ""
    metrics: dict[str, Any] = field(default_factory=dict)

    def dumps(self) -> str:
        return json.dumps(asdict(self), indent=1, sort_keys=True, default=str) + "\n"


def _digest(data: bytes | str) -> str:
    if isinstance(data, str):
        data = data.encode()
    return hashlib.sha256(data).hexdigest()


def _phi(text: str | None):
    if text is None or text in ("default", "auto"):
        return text or "default"
    try:
        return Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--phi expects a rational, 'auto' or 'default', got {text!r}") from None


def sparsify(G: MultiGraph, method: str, phi="default", paranoid: bool = False, cut_finder: str = "bruteforce"):
    if method == "existence":
        return poly_sized_c_network(G, cut_finder=cut_finder)
    if method == "efficient":
        return efficient_poly_sized(G, phi_policy=phi, paranoid=paranoid)
    if method == "containment":
        return mimicking_via_containment(G, phi_policy=phi)
    raise ValueError(f"unknown method {method!r}")


# --- subcommands ---------------------------------------------------------------


def cmd_sparsify(args) -> tuple[int, str, dict]:
    G = load_graph(args.graph, args.c)
    res = sparsify(G, args.method, args.phi, args.paranoid, args.cut_finder)
    out = dumps_sparsifier(res, G.terminals, G.c)
    metrics = {"vertices_in": G.n, "edges_in": G.m, "vertices_out": res.graph.n, "edges_out": res.size}
    if args.output:
        Path(args.output).write_text(out)
        text = json.dumps(metrics, sort_keys=True) + "\n" if args.json else (
            f"{args.method}: {G.n} vertices / {G.m} edges -> {res.graph.n} vertices / {res.size} edges\n"
        )
    else:
        text = out
    return 0, text, metrics


def cmd_verify(args) -> tuple[int, str, dict]:
    G = load_graph(args.graph, args.c)
    H = load_sparsifier(args.sparsifier)
    check = tc_equivalent(G, H, G.terminals, G.c)
    metrics = {"equivalent": bool(check)}
    if check:
        return 0, ("{\"equivalent\": true}\n" if args.json else "OK: (T,c)-equivalent\n"), metrics
    left, right = check.counterexample.left, check.counterexample.right
    a, b = check.values
    if args.json:
        text = json.dumps({"equivalent": False, "left": sorted(left), "right": sorted(right),
                           "graph": a, "sparsifier": b}, sort_keys=True) + "\n"
    else:
        text = f"FAIL: {sorted(left)} | {sorted(right)}: graph {a}, sparsifier {b}\n"
    return 1, text, metrics


def cmd_dynacon(args) -> tuple[int, str, dict]:
    log = QueryLog.load(args.log)
    fn = identity_fn if args.sparsifier == "identity" else None
    stats: dict = {}
    answers = offline_connectivity(log, args.c, fn, stats=stats)
    text = json.dumps(answers) + "\n" if args.json else "".join(f"{a}\n" for a in answers)
    return 0, text, {"queries": len(answers), "total_size": stats.get("total_size", 0)}


def cmd_decompose(args) -> tuple[int, str, dict]:
    G = load_graph(args.graph)
    phi = _phi(args.phi)
    if not isinstance(phi, Fraction):
        raise SystemExit("decompose needs a numeric --phi")
    dec = expander_decompose(G, phi)
    if args.json:
        text = json.dumps({
            "pieces": [sorted(P) for P in dec.pieces],
            "verified": dec.verified,
            "piece_phi": [None if p is None else str(p) for p in dec.piece_phi],
            "inter_cluster_edges": sorted(dec.inter_cluster_edges),
        }, sort_keys=True) + "\n"
    else:
        lines = [
            f"piece {i}: {' '.join(map(str, sorted(P)))}" + ("" if ok else "  (unverified)")
            for i, (P, ok) in enumerate(zip(dec.pieces, dec.verified))
        ]
        lines.append("inter-cluster: " + " ".join(map(str, sorted(dec.inter_cluster_edges))))
        text = "\n".join(lines) + "\n"
    return 0, text, {"pieces": len(dec.pieces), "inter_cluster": len(dec.inter_cluster_edges)}


def cmd_enumerate_cuts(args) -> tuple[int, str, dict]:
    G = load_graph(args.graph)
    cuts = enumerate_small_cuts(G, args.c, args.nu)
    rows = [sorted(w.edges) for w in cuts]
    text = json.dumps(rows) + "\n" if args.json else "".join(" ".join(map(str, r)) + "\n" for r in rows)
    return 0, text, {"cuts": len(rows)}


def cmd_intersecting(args) -> tuple[int, str, dict]:
    G = load_graph(args.graph, args.c)
    if args.containing:
        E = get_containing_edges(G, G.terminals, G.c, args.strategy)
    else:
        fn = {
            "nontrivial": recursive_nontrivial_cuts,
            "terminal": recursive_terminal_cuts,
            "terminal-fast": recursive_terminal_cuts_fast,
        }[args.strategy]
        E = fn(G, G.terminals, G.c)
    if args.json:
        text = json.dumps({"edges": sorted(E.edges), "provenance": {str(k): v for k, v in E.provenance.items()}},
                          sort_keys=True) + "\n"
    else:
        text = " ".join(map(str, sorted(E.edges))) + "\n"
    return 0, text, {"edges": len(E)}


def cmd_violating_cut(args) -> tuple[int, str, dict]:
    G = load_graph(args.graph, args.c)
    piece = [int(x) for x in args.piece.replace(",", " ").split()]
    w = CUT_FINDERS[args.finder](G, frozenset(piece), G.c)
    if w is None:
        return 0, ("{\"well_linked\": true}\n" if args.json else "WELL-LINKED\n"), {"violating": False}
    if args.json:
        text = json.dumps({"well_linked": False, "A": sorted(w.side1), "B": sorted(w.side2),
                           "edges": sorted(w.edges)}, sort_keys=True) + "\n"
    else:
        text = (f"A: {' '.join(map(str, sorted(w.side1)))}\nB: {' '.join(map(str, sorted(w.side2)))}\n"
                f"edges: {' '.join(map(str, sorted(w.edges)))}\n")
    return 0, text, {"violating": True}


def audit_rows(instances: int, seed: int, methods=METHODS, C: float = 2.0, n_max: int = 20, m_max: int = 50) -> list[dict]:
    """Size and equivalence table over seeded random instances."""
    rng = random.Random(seed)
    rows = []
    for i in range(instances):
        G = random_instance(rng, n_max=n_max, m_max=m_max)
        k, c = len(G.terminals), G.c
        for method in methods:
            res = sparsify(G, method)
            bound = k * c**4 if method != "containment" else k * (C * c) ** (2 * c)
            rows.append({
                "instance": i, "k": k, "c": c, "method": method, "edges_in": G.m, "edges_out": res.size,
                "ratio_kc4": round(res.size / (k * c**4), 4),
                "ratio_kCc2c": round(res.size / (k * (C * c) ** (2 * c)), 4),
                "within_bound": res.size <= bound,
                "equivalent": bool(tc_equivalent(G, res.graph, G.terminals, c)),
            })
    return rows


def cmd_audit(args) -> tuple[int, str, dict]:
    seed = args.seed if args.seed is not None else int(os.environ.get("CMIMIC_SEED", "0"))
    rows = audit_rows(args.instances, seed, args.methods, args.C)
    worst = {m: max((r["ratio_kc4"] for r in rows if r["method"] == m), default=0.0) for m in args.methods}
    ok = all(r["equivalent"] and r["within_bound"] for r in rows)
    if args.json:
        text = json.dumps({"seed": seed, "rows": rows, "C_size": worst}, sort_keys=True) + "\n"
    else:
        head = f"{'inst':>4} {'k':>2} {'c':>2} {'method':<12} {'|E_in|':>6} {'|E_out|':>7} {'/kc^4':>7} {'/k(Cc)^2c':>9} equiv"
        lines = [head]
        for r in rows:
            lines.append(
                f"{r['instance']:>4} {r['k']:>2} {r['c']:>2} {r['method']:<12} {r['edges_in']:>6} {r['edges_out']:>7}"
                f" {r['ratio_kc4']:>7.3f} {r['ratio_kCc2c']:>9.4f} {'yes' if r['equivalent'] else 'NO'}"
            )
        lines.append("measured C_size (max |E_out| / kc^4): " + ", ".join(f"{m}={v:.3f}" for m, v in worst.items()))
        text = "\n".join(lines) + "\n"
    return (0 if ok else 1), text, {"rows": len(rows), "C_size": worst, "all_ok": ok}


# --- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cmimic", description="Connectivity-c mimicking networks and friends.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--manifest", metavar="PATH", help="write a run manifest (JSON) here")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sparsify", help="build a (T,c)-equivalent contraction")
    s.add_argument("graph")
    s.add_argument("--method", choices=METHODS, default="efficient")
    s.add_argument("--c", type=int, help="override the threshold in the file header")
    s.add_argument("--phi", type=_phi, default="default", help="rational, 'auto' or 'default'")
    s.add_argument("--paranoid", action="store_true", help="re-check every contraction by brute force")
    s.add_argument("--cut-finder", choices=sorted(CUT_FINDERS), default="bruteforce")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_sparsify)

    s = sub.add_parser("verify", help="check a sparsifier against its graph")
    s.add_argument("graph")
    s.add_argument("sparsifier")
    s.add_argument("--c", type=int)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("dynacon", help="offline dynamic c-connectivity over a query log")
    s.add_argument("log")
    s.add_argument("--c", type=int, required=True)
    s.add_argument("--sparsifier", choices=("containment", "identity"), default="containment")
    s.set_defaults(func=cmd_dynacon)

    s = sub.add_parser("decompose", help="expander decomposition")
    s.add_argument("graph")
    s.add_argument("--phi", required=True)
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("enumerate-cuts", help="cuts of at most c edges with a connected side of at most nu vertices")
    s.add_argument("graph")
    s.add_argument("--c", type=int, required=True)
    s.add_argument("--nu", type=int, required=True)
    s.set_defaults(func=cmd_enumerate_cuts)

    s = sub.add_parser("intersecting", help="edge set intersecting all small terminal cuts")
    s.add_argument("graph")
    s.add_argument("--strategy", choices=STRATEGIES, default="terminal")
    s.add_argument("--c", type=int)
    s.add_argument("--containing", action="store_true", help="peel rounds c..1 into a containing set")
    s.set_defaults(func=cmd_intersecting)

    s = sub.add_parser("violating-cut", help="find a violating cut of a vertex set or report WELL-LINKED")
    s.add_argument("graph")
    s.add_argument("--piece", required=True, help="vertex ids, comma or space separated")
    s.add_argument("--c", type=int)
    s.add_argument("--finder", choices=sorted(CUT_FINDERS), default="fpt")
    s.set_defaults(func=cmd_violating_cut)

    s = sub.add_parser("audit", help="size / equivalence table over random instances")
    s.add_argument("--instances", type=int, default=20)
    s.add_argument("--seed", type=int, help="defaults to $CMIMIC_SEED or 0")
    s.add_argument("--methods", nargs="+", choices=METHODS, default=list(METHODS))
    s.add_argument("--C", type=float, default=2.0, help="constant in the k(Cc)^2c bound")
    s.set_defaults(func=cmd_audit)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        status, text, metrics = args.func(args)
    except (FormatError, ValueError, KeyError) as exc:
        print(f"cmimic {args.command}: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    if args.manifest:
        params = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "manifest")}
        inputs = {}
        for key in ("graph", "sparsifier", "log"):
            if getattr(args, key, None):
                inputs[key] = _digest(Path(getattr(args, key)).read_bytes())
        out = getattr(args, "output", None)
        body = Path(out).read_text() if out else text
        Path(args.manifest).write_text(
            RunManifest(args.command, params, inputs, _digest(body), metrics).dumps()
        )
    return status


if __name__ == "__main__":
    raise SystemExit(main())
