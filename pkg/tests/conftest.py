import pathlib
import sys

import pytest

from rainbowbip.graphs import BipartiteGraph

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent))


@pytest.fixture
def path4():
    # U0-V0-U1-V1, a path with 3 edges
    return BipartiteGraph.from_edges(2, 2, [(0, 0), (1, 0), (1, 1)])


@pytest.fixture
def cycle4():
    return BipartiteGraph.from_edges(2, 2, [(0, 0), (1, 0), (1, 1), (0, 1)])


@pytest.fixture
def cycle6():
    # U0-V0-U1-V1-U2-V2-U0
    return BipartiteGraph.from_edges(3, 3, [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2)])


@pytest.fixture
def k23():
    return BipartiteGraph.complete(2, 3)
