from fractions import Fraction
from itertools import product

import pytest

from gapsource import attach_colorings, lift_planted_biclique, synth_no_instance, synth_yes_instance
from graphs import ColoredBipartiteGraph, is_dominating
from reductions import build_g_prime, derive_params32, extract_yes_witness32
from reductions.reduce32 import class_members, g_prime_size, rederive_edges
from solvers import exact_min_dominating_set
from solvers.dominating import minimal_dominating_sets
from utils.errors import CapExceededError, InputError, WitnessError

from .conftest import colored_block, full_block


def assert_hits_every_class(out, D):
    d = out.manifest["params"]["d"]
    for c in range(1, d + 1):
        assert set(D) & set(class_members(out, c)), c


def test_empty_bipartite_graph():
    H = colored_block(2, 3, edges=())
    out = build_g_prime(H, 1)
    assert out.manifest["edge_rules"]["E4"] == 0
    for c in range(1, 4):
        x, y = out.vertex("X", c), out.vertex("Y", c)
        assert out.graph.neighbors(x) == {out.vertex("B", c)}
        assert out.graph.neighbors(y) == {out.vertex("B", c)}


def test_vertex_counts_and_layout():
    H = ColoredBipartiteGraph(3, 4, frozenset({(1, 1), (2, 2), (3, 4)}), alpha=(1, 2, 1), beta=(1, 2, 2, 1),
                              a_colors=2, b_colors=2)
    out = build_g_prime(H, 2)
    assert out.graph.n == g_prime_size(H, 2) == 4 + 2 * 2 + 3 * 2 + 4 * 2 * 2
    assert out.role_counts() == {"B": 4, "X": 2, "Y": 2, "C": 6, "W": 16}
    assert out.vertices_of_kind("X") == [5, 6]
    assert out.manifest["roles"] == [["B", 4], ["X", 2], ["Y", 2], ["C", 6], ["W", 16]]
    assert out.vertex("X", 1) == 5 and out.vertex("Y", 1) == 7
    assert out.vertex("C", 1, 1) == 9 and out.vertex("W", 1, 1, 1) == 15


def test_x_and_y_only_see_their_class():
    H = ColoredBipartiteGraph(2, 4, frozenset({(1, 1), (2, 3)}), alpha=(1, 2), beta=(1, 1, 2, 2), a_colors=2,
                              b_colors=2)
    out = build_g_prime(H, 1)
    for c in (1, 2):
        members = {out.vertex("B", b) for b in H.beta_classes[c]}
        assert out.graph.neighbors(out.vertex("X", c)) == members
        assert out.graph.neighbors(out.vertex("Y", c)) == members
        assert not out.graph.has_edge(out.vertex("X", c), out.vertex("Y", c))


def test_edges_rederive_exactly():
    H = ColoredBipartiteGraph(3, 4, frozenset({(1, 1), (1, 2), (2, 2), (3, 3), (3, 4)}), alpha=(1, 2, 2),
                              beta=(1, 2, 1, 2), a_colors=2, b_colors=2)
    out = build_g_prime(H, 2)
    assert rederive_edges(out) == out.graph.edges
    assert sum(out.manifest["edge_rules"].values()) == out.graph.m


def test_block_gamma_equals_witness():
    out = build_g_prime(colored_block(2, 2), 1)
    assert out.graph.n == 12
    assert exact_min_dominating_set(out.graph).size == 4
    witness = extract_yes_witness32(out, full_block(2, 2))
    assert witness.size == 4 and is_dominating(out.graph, witness.vertices)


def test_planted_witness_s2_d3_t2():
    inst = synth_yes_instance(2, 3, seed=1)
    colored = attach_colorings(inst, 2, 3)
    out = build_g_prime(colored, 2)
    K = lift_planted_biclique(inst, colored)
    witness = extract_yes_witness32(out, K)
    assert witness.size == 3 + 2 * 2
    assert is_dominating(out.graph, witness.vertices)


def test_malformed_witness_names_missing_pair():
    H = colored_block(2, 2, edges=[(1, 1), (1, 2), (2, 1)])
    out = build_g_prime(H, 1)
    with pytest.raises(WitnessError, match=r"\(2, 2\) missing"):
        extract_yes_witness32(out, full_block(2, 2))


def test_witness_colors_must_be_injective():
    H = ColoredBipartiteGraph(2, 3, frozenset(product((1, 2), (1, 2, 3))), alpha=(1, 1), beta=(1, 2, 3),
                              a_colors=2, b_colors=3)
    out = build_g_prime(H, 1)
    with pytest.raises(WitnessError, match="α not injective"):
        extract_yes_witness32(out, full_block(2, 3))


def test_empty_beta_class_rejected():
    H = ColoredBipartiteGraph(2, 3, frozenset(), alpha=(1, 2), beta=(1, 1, 2), a_colors=2, b_colors=3)
    with pytest.raises(InputError, match="empty"):
        build_g_prime(H, 1)


def test_color_count_and_cap_checks():
    H = colored_block(2, 2)
    with pytest.raises(InputError):
        build_g_prime(H, 1, s=3)
    with pytest.raises(InputError):
        build_g_prime(H, 1, d=3)
    with pytest.raises(InputError):
        build_g_prime(H, 0)
    with pytest.raises(CapExceededError):
        build_g_prime(H, 1, vertex_cap=11)


def test_every_minimal_dominating_set_hits_every_class():
    for H in (colored_block(2, 2), colored_block(1, 2, edges=()), colored_block(2, 2, edges=[(1, 1), (2, 2)])):
        out = build_g_prime(H, 1)
        for D in minimal_dominating_sets(out.graph):
            assert_hits_every_class(out, D)


def _small_yes_configs():
    for s, d, t in product((2, 3), (2, 3, 4), (1, 2)):
        if 3 * d + s * t * (1 + d) <= 25:
            yield s, d, t


# (s, d, t, left_pad, right_pad) whose colored graphs span several blocks
PADDED_CONFIGS = [(1, 2, 1, 0, 1), (2, 2, 1, 1, 0)]


def test_padding_varies_with_seed():
    graphs = {synth_yes_instance(2, 2, 1, 0, seed=seed).H0.edges for seed in range(10)}
    assert len(graphs) > 1


def test_completeness_on_planted_blocks():
    for s, d, t in _small_yes_configs():
        inst = synth_yes_instance(s, d)
        colored = attach_colorings(inst, s, d)
        out = build_g_prime(colored, t)
        witness = extract_yes_witness32(out, lift_planted_biclique(inst, colored))
        assert witness.size == d + s * t
        assert is_dominating(out.graph, witness.vertices)


@pytest.mark.slow
def test_completeness_and_class_hitting():
    checked = 0
    for seed in range(10):
        for s, d, t, left_pad, right_pad in PADDED_CONFIGS:
            inst = synth_yes_instance(s, d, left_pad, right_pad, seed=seed)
            colored = attach_colorings(inst, s, d)
            assert colored.a_size + colored.b_size > inst.a_size + inst.b_size
            out = build_g_prime(colored, t)
            assert out.graph.n <= 25
            witness = extract_yes_witness32(out, lift_planted_biclique(inst, colored))
            assert witness.size == d + s * t
            best = exact_min_dominating_set(out.graph)
            assert best.optimal and best.size <= d + s * t
            assert_hits_every_class(out, best.vertices)
            checked += 1
    assert checked >= 20


@pytest.mark.slow
def test_no_instances_hit_every_class():
    for seed in range(20):
        s, d, t = (2, 3, 1) if seed % 2 else (3, 2, 1)
        inst = synth_no_instance(s, d - 1, s, d, 0.5, seed=seed, d=d)
        out = build_g_prime(attach_colorings(inst, s, d), t)
        best = exact_min_dominating_set(out.graph)
        assert_hits_every_class(out, best.vertices)


@pytest.mark.slow
def test_empirical_gap():
    s, d, t = 2, 2, 1
    for seed in range(6):
        yes = synth_yes_instance(s, d, 1, 1, seed=seed)
        no = synth_no_instance(s, d - 1, s + 1, d + 1, 0.5, seed=seed * 64, d=d)
        g_yes = exact_min_dominating_set(build_g_prime(attach_colorings(yes, s, d), t).graph)
        g_no = exact_min_dominating_set(build_g_prime(attach_colorings(no, s, d), t).graph)
        assert g_yes.optimal and g_no.optimal
        assert g_no.size > g_yes.size == d + s * t


# ========================= parameters ==========================

def test_params32_small_example():
    p = derive_params32(3, epsilon=0.9, delta=0.4)
    assert (p.s, p.q, p.d, p.t) == (3, 4, 4096, 103)
    assert p.flags["st_below_eps_d"] and p.flags["ratio_below_root"] and p.flags["factorial_below_root"]
    assert p.asymptotic_regime
    assert p.yes_bound == 4096 + 3 * 103
    assert p.no_bound == Fraction(11, 10) * 4096


def test_params32_rho_limit():
    assert derive_params32(3, epsilon=0.9, delta=0.4).rho_limit == Fraction(11, 19)
    assert derive_params32(3, epsilon=0.9, delta=0.4, rho_bound="1/2").flags["rho_admissible"]
    assert not derive_params32(3, epsilon=0.9, delta=0.4, rho_bound=0.6).flags["rho_admissible"]


def test_params32_d_monotone_in_epsilon():
    ds = [derive_params32(4, epsilon=e).d for e in ("0.9", "0.7", "0.5", "0.3", "0.1")]
    assert ds == sorted(ds)


def test_params32_source_flag_and_json():
    p = derive_params32(3, n=10, epsilon=0.9, delta=0.4)
    assert p.flags["source_d_ok"] is False
    data = p.to_dict()
    assert data["d"] == "4096" and data["t"] == "103" and data["epsilon"] == "9/10"


@pytest.mark.parametrize("kwargs", [dict(k=2), dict(k=3, epsilon=1), dict(k=3, epsilon=0), dict(k=3, delta=0.5),
                                    dict(k=3, delta=0)])
def test_params32_domain(kwargs):
    with pytest.raises(InputError):
        derive_params32(**kwargs)
