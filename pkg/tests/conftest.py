from itertools import product

import networkx as nx
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from graphs import ColoredBipartiteGraph, Graph

settings.register_profile("gapforge", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("gapforge")


def to_nx(G: Graph):
    g = nx.Graph()
    g.add_nodes_from(G.vertices)
    g.add_edges_from(G.edges)
    return g


def from_nx(g) -> Graph:
    return Graph.from_edges(g.number_of_nodes(), ((u + 1, v + 1) for u, v in g.edges()))


def random_graph(n, p, seed) -> Graph:
    return from_nx(nx.gnp_random_graph(n, p, seed=seed))


def cycle(n) -> Graph:
    return Graph.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])


@st.composite
def graphs(draw, min_n=0, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@pytest.fixture
def c5():
    return cycle(5)


@pytest.fixture
def k3():
    return Graph.from_edges(3, [(1, 2), (2, 3), (1, 3)])


def colored_block(s, d, edges=None) -> ColoredBipartiteGraph:
    """s x d bipartite graph, complete by default, every vertex its own color."""
    if edges is None:
        edges = product(range(1, s + 1), range(1, d + 1))
    return ColoredBipartiteGraph(s, d, frozenset(edges), alpha=tuple(range(1, s + 1)),
                                 beta=tuple(range(1, d + 1)), a_colors=s, b_colors=d)


def full_block(s, d):
    return (tuple(range(1, s + 1)), tuple(range(1, d + 1)))
