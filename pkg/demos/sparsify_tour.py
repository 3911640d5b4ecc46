"""Shrink a few graphs with all three constructions and check each result.

    python3 demos/sparsify_tour.py
"""

import random

from cmimic import instances
from cmimic.expander import efficient_poly_sized
from cmimic.graph import build_graph
from cmimic.intersect import mimicking_via_containment
from cmimic.oracle import tc_equivalent
from cmimic.welllinked import poly_sized_c_network


def grid(w, h, c):
    vid = lambda x, y: y * w + x + 1
    E = [(vid(x, y), vid(x + 1, y)) for y in range(h) for x in range(w - 1)]
    E += [(vid(x, y), vid(x, y + 1)) for y in range(h - 1) for x in range(w)]
    corners = [vid(0, 0), vid(w - 1, 0), vid(0, h - 1), vid(w - 1, h - 1)]
    return build_graph(w * h, E, corners, c)


def main():
    rng = random.Random(7)
    graphs = {
        "dumbbell": instances.dumbbell(4, c=2),
        "double star": instances.double_star(2),
        "4x4 grid, corners": grid(4, 4, 2),
        "random instance": instances.random_instance(rng, n_max=20, m_max=50),
    }
    methods = {
        "existence": poly_sized_c_network,
        "efficient": efficient_poly_sized,
        "containment": mimicking_via_containment,
    }
    print(f"{'graph':<20} {'k':>2} {'c':>2} {'n/m in':>8}  " + "  ".join(f"{m:>12}" for m in methods))
    for name, G in graphs.items():
        cells = []
        for fn in methods.values():
            res = fn(G)
            ok = tc_equivalent(G, res.graph, G.terminals, G.c)
            cells.append(f"{res.graph.n:>3}/{res.size:<3}{'ok' if ok else 'BAD':>4}")
        print(f"{name:<20} {len(G.terminals):>2} {G.c:>2} {G.n:>3}/{G.m:<4}  " + "  ".join(f"{c:>12}" for c in cells))


if __name__ == "__main__":
    main()
