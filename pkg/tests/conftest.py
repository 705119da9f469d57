from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lplab.graphs import Graph, parse_graph6
from lplab.harness import generate_connected_graphs


@pytest.fixture
def p4() -> Graph:
    return parse_graph6("Ch")


@pytest.fixture
def k13() -> Graph:
    """Star on 4 vertices, center 0."""
    return parse_graph6("Cs")


@pytest.fixture
def c5() -> Graph:
    return Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])


@pytest.fixture
def p7() -> Graph:
    return Graph.from_edges(7, [(i, i + 1) for i in range(6)])


@pytest.fixture
def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


@pytest.fixture(scope="session")
def corpus_by_n() -> dict[int, list[Graph]]:
    """Connected graphs for n = 1..6, shared across the unit tests."""
    return {n: generate_connected_graphs(n) for n in range(1, 7)}
