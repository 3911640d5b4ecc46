import itertools
import os

import pytest
from hypothesis import HealthCheck, settings

from cmimic import instances
from cmimic.graph import MultiGraph, build_graph

settings.register_profile(
    "cmimic",
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
    derandomize=True,
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "cmimic"))


def brute_mincut(G: MultiGraph, A, B) -> float:
    """Minimum |E(S, V-S)| over all S with A inside and B outside, by subsets."""
    A, B = G.resolve(A), G.resolve(B)
    if A & B:
        return float("inf")
    free = sorted(G.vertices - A - B)
    best = float("inf")
    for r in range(len(free) + 1):
        for extra in itertools.combinations(free, r):
            S = A | set(extra)
            cut = sum(1 for e in G.live_edges() if (G.endpoints(e)[0] in S) != (G.endpoints(e)[1] in S))
            best = min(best, cut)
    return best


@pytest.fixture
def P3():
    return build_graph(3, [(1, 2), (2, 3)], [1, 3], 2)


@pytest.fixture
def P5():
    return instances.path(5, c=1)


@pytest.fixture
def C4():
    return instances.cycle(4, terminals=[1, 3], c=2)


@pytest.fixture
def K4():
    return instances.complete(4, c=2)


@pytest.fixture
def STAR5():
    return instances.star(4, c=2)


@pytest.fixture
def DUMBBELL():
    return instances.dumbbell(3, c=2)


def pytest_terminal_summary(terminalreporter):
    from acceptance_report import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
