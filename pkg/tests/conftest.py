import os
import random

import pytest
from hypothesis import strategies as st

from anchorlab.graph import Graph, cycle_graph

LONG = os.environ.get("ANCHORLAB_LONG") == "1"


def pytest_collection_modifyitems(config, items):
    if LONG:
        return
    skip = pytest.mark.skip(reason="long run; set ANCHORLAB_LONG=1")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


@st.composite
def graphs(draw, min_n=0, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for j in range(n) for i in range(j)]
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, b in zip(pairs, bits) if b])


@st.composite
def permutations_of(draw, n):
    return tuple(draw(st.permutations(range(n))))


def random_labeled(n, rng: random.Random, p=0.5):
    pairs = [(i, j) for j in range(n) for i in range(j)]
    return Graph.from_edges(n, [e for e in pairs if rng.random() < p])


def to_nx(g):
    import networkx as nx

    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges())
    return G


def from_nx(G):
    mapping = {v: i for i, v in enumerate(sorted(G.nodes()))}
    return Graph.from_edges(len(mapping), [(mapping[u], mapping[v]) for u, v in G.edges()])


def triangle_of_triangles():
    """Central triangle 0-1-2 with a further triangle hanging off each of its vertices."""
    edges = [(0, 1), (1, 2), (0, 2), (0, 3), (0, 4), (3, 4), (1, 5), (1, 6), (5, 6), (2, 7), (2, 8), (7, 8)]
    return Graph.from_edges(9, edges)


def c5_with_two_pendants(second):
    """C5 on 0..4, vertex 5 hanging off 0 and vertex 6 hanging off ``second``."""
    return Graph.from_edges(7, [(i, (i + 1) % 5) for i in range(5)] + [(5, 0), (6, second)])


def chair():
    """Vertex 4 joined to 1, 2, 3, and 3 joined to 0: the smallest n-1 graph outside the K1 + F shape."""
    return Graph.from_edges(5, [(0, 3), (1, 4), (2, 4), (3, 4)])


@pytest.fixture
def c5():
    return cycle_graph(5)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
