import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphs import (BipartiteGraph, ColoredBipartiteGraph, Graph, bipartite_from_dict, bipartite_to_dict,
                    complement, is_dominating, parse_graph, write_graph)
from utils.errors import GraphParseError, InputError

from .conftest import graphs, to_nx


def test_full_vertex_set_dominates(c5):
    assert is_dominating(c5, c5.vertices)


def test_c5_pair_dominates(c5):
    assert is_dominating(c5, {1, 3})
    assert not is_dominating(c5, {1, 2})


def test_empty_set_does_not_dominate(c5):
    assert not is_dominating(c5, set())


def test_empty_graph_is_dominated_by_nothing():
    assert is_dominating(Graph(0), set())


def test_out_of_range_vertex_is_input_error(c5):
    with pytest.raises(InputError):
        is_dominating(c5, {6})
    with pytest.raises(InputError):
        is_dominating(c5, {0})


@given(graphs(), st.data())
def test_is_dominating_agrees_with_networkx(G, data):
    D = data.draw(st.sets(st.sampled_from(list(G.vertices)))) if G.n else set()
    assert is_dominating(G, D) == nx.is_dominating_set(to_nx(G), D)


def test_parse_simple():
    G = parse_graph("p edge 3 2\ne 1 2\ne 2 3")
    assert G == Graph(3, frozenset({(1, 2), (2, 3)}))


def test_parse_empty_edge_set():
    G = parse_graph("p edge 2 0")
    assert G.n == 2 and G.m == 0


def test_parse_collapses_duplicates_and_orientation():
    G = parse_graph("c hello\np edge 3 3\ne 1 2\ne 2 1\nc mid\ne 3 2\n")
    assert G.sorted_edges() == [(1, 2), (2, 3)]


@pytest.mark.parametrize("text, line_no", [
    ("p edge 2 1\ne 1 1", 2),
    ("p edge 2 1\ne 1 3", 2),
    ("p edge two 1", 1),
    ("p graph 2 1", 1),
    ("e 1 2\np edge 2 1", 1),
    ("p edge 2 1\nx 1 2", 2),
    ("p edge 2 1\np edge 2 1", 2),
])
def test_parse_errors_carry_line_numbers(text, line_no):
    with pytest.raises(GraphParseError) as err:
        parse_graph(text)
    assert err.value.line_no == line_no
    assert f"line {line_no}" in str(err.value)


def test_parse_missing_header():
    with pytest.raises(GraphParseError):
        parse_graph("c nothing here\n")


def test_parse_warns_on_edge_count_mismatch(caplog):
    parse_graph("p edge 3 5\ne 1 2\n")
    assert "declares 5 edges" in caplog.text


def test_write_single_vertex():
    assert write_graph(Graph(1)) == "p edge 1 0\n"


def test_write_sorts_edges():
    G = Graph.from_edges(3, [(2, 3), (1, 2)])
    assert write_graph(G) == "p edge 3 2\ne 1 2\ne 2 3\n"


def test_write_comments_first():
    text = write_graph(Graph(2), comments=["digest abc"])
    assert text.splitlines()[0] == "c digest abc"
    assert parse_graph(text) == Graph(2)


@given(graphs())
def test_parse_write_roundtrip(G):
    assert parse_graph(write_graph(G)) == G


def test_graph_rejects_loops_and_range():
    with pytest.raises(InputError):
        Graph.from_edges(2, [(1, 1)])
    with pytest.raises(InputError):
        Graph.from_edges(2, [(1, 3)])


def test_graph_ids_stable(c5):
    assert list(c5.vertices) == [1, 2, 3, 4, 5]
    assert c5.closed_neighborhood(1) == {1, 2, 5}
    assert c5.degree(3) == 2
    assert c5.has_edge(5, 1)


@given(graphs())
def test_complement_matches_networkx(G):
    ours = to_nx(complement(G))
    theirs = nx.complement(to_nx(G))
    assert set(map(frozenset, ours.edges())) == set(map(frozenset, theirs.edges()))


def test_bipartite_edges_must_cross():
    with pytest.raises(InputError):
        BipartiteGraph.from_edges(2, 2, [(3, 1)])


def test_colored_validation():
    with pytest.raises(InputError):
        ColoredBipartiteGraph(2, 1, frozenset(), alpha=(1,), beta=(1,), a_colors=1, b_colors=1)
    with pytest.raises(InputError):
        ColoredBipartiteGraph(1, 1, frozenset(), alpha=(2,), beta=(1,), a_colors=1, b_colors=1)


def test_colored_json_keys_and_classes():
    H = ColoredBipartiteGraph(2, 3, frozenset({(1, 1), (2, 3)}), alpha=(1, 2), beta=(1, 1, 3), a_colors=2,
                              b_colors=3)
    data = bipartite_to_dict(H)
    assert set(data) == {"a_size", "b_size", "a_colors", "b_colors", "alpha", "beta", "edges"}
    assert data["edges"] == [[1, 1], [2, 3]]
    assert bipartite_from_dict(data) == H
    assert H.beta_classes[1] == (1, 2)
    assert H.empty_beta_classes() == [2]


def test_colored_json_missing_key():
    with pytest.raises(InputError, match="missing keys"):
        bipartite_from_dict({"a_size": 1})
