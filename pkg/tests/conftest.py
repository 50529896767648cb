"""Shared fixtures for the test suite."""

import networkx as nx
import pytest

from twmatch.core.graph import Graph

from .graphs import cycle, path


@pytest.fixture
def p4() -> Graph:
    return path(4)


@pytest.fixture
def c4() -> Graph:
    return cycle(4)


@pytest.fixture
def two_k2() -> Graph:
    return Graph.from_edges(4, [(0, 1), (2, 3)])


@pytest.fixture
def triangle() -> Graph:
    return cycle(3)


@pytest.fixture
def petersen() -> Graph:
    return Graph.from_networkx(nx.petersen_graph())


@pytest.fixture
def write_file(tmp_path):
    """Write text to tmp_path/name and return the path as a string."""

    def write(name: str, text: str) -> str:
        target = tmp_path / name
        target.write_text(text)
        return str(target)

    return write
