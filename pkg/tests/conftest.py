import itertools

import hypothesis
import numpy as np
import pytest

from adhocsf.graph import Graph

hypothesis.settings.register_profile("default", deadline=None, max_examples=60)
hypothesis.settings.register_profile("ci", deadline=None, max_examples=200)
hypothesis.settings.load_profile("default")

# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


def path_graph(n: int) -> Graph:
    return Graph.from_edges([(i, i + 1) for i in range(n - 1)], nodes=range(n))


def star_graph(leaves: int) -> Graph:
    """Hub 0 with leaves 1..leaves."""
    return Graph.from_edges([(0, i) for i in range(1, leaves + 1)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges([(i, j) for i in range(n) for j in range(i + 1, n)])


def floyd_warshall(g: Graph) -> dict[tuple[int, int], float]:
    nodes = g.nodes()
    dist = {(a, b): (0.0 if a == b else np.inf) for a in nodes for b in nodes}
    for a, b in g.edges():
        dist[a, b] = dist[b, a] = 1.0
    for k, i, j in itertools.product(nodes, nodes, nodes):
        if dist[i, k] + dist[k, j] < dist[i, j]:
            dist[i, j] = dist[i, k] + dist[k, j]
    return dist


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
