import pytest
from hypothesis import given
from hypothesis import strategies as st

from circuits import MonotoneCircuit, graph_to_circuit, min_weight_satisfying, parse_circuit, write_circuit
from graphs import Graph, is_dominating
from solvers import SolverBudget, exact_min_dominating_set
from utils.errors import InputError

from .conftest import graphs, random_graph


def test_c5_circuit(c5):
    C = graph_to_circuit(c5)
    assert C.num_vars == 5
    assert C.clauses[0] == frozenset({1, 2, 5})
    best = min_weight_satisfying(C)
    assert best.support == (1, 3) and best.optimal


def test_satisfied_iff_dominating(c5):
    C = graph_to_circuit(c5)
    for support in ({1, 3}, {1, 2}, {2, 4}, set()):
        assert C.is_satisfied_by(support) == is_dominating(c5, support)


def test_empty_circuit():
    assert min_weight_satisfying(graph_to_circuit(Graph(0))).weight == 0


def test_weight_matches_domination_number_on_suite():
    for seed in range(50):
        G = random_graph(1 + seed % 7, 0.35, seed=seed)
        best = min_weight_satisfying(graph_to_circuit(G))
        ds = exact_min_dominating_set(G)
        assert best.weight == ds.size, seed
        assert best.support == tuple(sorted(ds.vertices)), seed


@given(graphs(max_n=8))
def test_optimal_support_satisfies(G):
    C = graph_to_circuit(G)
    best = min_weight_satisfying(C)
    assert C.is_satisfied_by(best.support)
    assert best.lower_bound == best.weight


@given(graphs(max_n=8), st.data())
def test_supersets_of_optimal_support_satisfy(G, data):
    C = graph_to_circuit(G)
    support = set(min_weight_satisfying(C).support)
    extra = data.draw(st.sets(st.integers(1, G.n))) if G.n else set()
    assert C.is_satisfied_by(support | extra)


def test_out_of_budget_gives_bounds():
    G = random_graph(20, 0.15, seed=5)
    C = graph_to_circuit(G)
    best = min_weight_satisfying(C, SolverBudget(max_nodes=3))
    assert C.is_satisfied_by(best.support)
    assert best.lower_bound <= exact_min_dominating_set(G).size <= best.weight


def test_too_many_variables():
    with pytest.raises(InputError):
        min_weight_satisfying(graph_to_circuit(Graph(31)))


def test_parse_and_write():
    text = "c from a graph\nvars 3\nor 1 2\nor 3 2\n"
    C = parse_circuit(text)
    assert C == MonotoneCircuit(3, (frozenset({1, 2}), frozenset({2, 3})))
    assert write_circuit(C, comments=["from a graph"]) == "c from a graph\nvars 3\nor 1 2\nor 2 3\n"
    assert min_weight_satisfying(C).support == (2,)


@pytest.mark.parametrize("text, message", [
    ("or 1\nvars 1", "before 'vars'"),
    ("vars 2\nor 1 x", "line 2"),
    ("vars 2\nand 1 2", "unrecognised"),
    ("vars 2\nvars 2", "single"),
    ("or", "before"),
    ("c nothing", "missing"),
])
def test_parse_errors(text, message):
    with pytest.raises(InputError, match=message):
        parse_circuit(text)


def test_clause_validation():
    with pytest.raises(InputError, match="empty"):
        MonotoneCircuit(2, ((),))
    with pytest.raises(InputError, match="outside"):
        MonotoneCircuit(2, ((1, 3),))
