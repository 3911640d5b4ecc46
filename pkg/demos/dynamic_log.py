"""Offline dynamic c-edge-connectivity on a random log, against replay.

    python3 demos/dynamic_log.py [q] [n] [c]
"""

import random
import sys
import time

from cmimic.dynacon import identity_fn, offline_connectivity
from cmimic.instances import random_log
from cmimic.oracle import naive_offline


def main(q=300, n=12, c=3):
    log = random_log(random.Random(1), q, n)
    t0 = time.perf_counter()
    stats: dict = {}
    fast = offline_connectivity(log, c, stats=stats)
    t1 = time.perf_counter()
    plain = offline_connectivity(log, c, identity_fn)
    t2 = time.perf_counter()
    ref = naive_offline(log, c)
    t3 = time.perf_counter()
    print(f"{len(log)} events, {len(ref)} queries, c={c}")
    print(f"  divide and conquer + sparsifier: {t1 - t0:.2f}s, total node size {stats['total_size']}")
    print(f"  divide and conquer, no sparsifier: {t2 - t1:.2f}s")
    print(f"  replay with a flow per query: {t3 - t2:.2f}s")
    print(f"  answers agree: {fast == plain == ref}")
    hist = {v: ref.count(v) for v in range(c + 1)}
    print("  answer histogram:", hist)


if __name__ == "__main__":
    main(*map(int, sys.argv[1:]))
