import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from commhide import Graph, datasets


@pytest.fixture(scope="session")
def karate() -> Graph:
    g = datasets.load_dataset("karate")
    assert g.node_count == 34 and g.edge_count == 78
    return g


@pytest.fixture(scope="session")
def lesmis() -> Graph:
    g = datasets.load_dataset("lesmis")
    assert g.node_count == 77 and g.edge_count == 254
    return g


@pytest.fixture(scope="session")
def second_dataset() -> tuple[str, Graph]:
    """Second real benchmark for the run-matrix criteria.

    The dolphin social network is used when a dolphins.edgelist drop-in is
    present; otherwise the bundled Les Miserables network stands in (the
    criteria exercised on it are topology-generic property checks).
    """
    if "dolphins" in datasets.available():
        return "dolphins", datasets.load_dataset("dolphins")
    return "lesmis", datasets.load_dataset("lesmis")


@pytest.fixture
def two_triangles() -> Graph:
    return Graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
