from itertools import product

import pytest

from gapsource import (attach_colorings, duplicate_side, lift_planted_biclique, synth_no_instance,
                       synth_yes_instance)
from graphs import ColoredBipartiteGraph, is_dominating
from reductions import (TupleVertexSpace, build_g_c, derive_params_main, exhaust_product_bound,
                        extract_yes_witness_main, product_bound_check)
from reductions.params import derive_params_superconstant, superconstant_c
from reductions.product_bound import tight_witness
from reductions.reducemain import g_c_size, rederive_edges
from solvers import exact_min_dominating_set
from utils.errors import CapExceededError, InputError, WitnessError

from .conftest import colored_block, full_block


def test_tuple_space_partitions_b_power():
    H = ColoredBipartiteGraph(1, 3, frozenset(), alpha=(1,), beta=(1, 1, 2), a_colors=1, b_colors=2)
    space = TupleVertexSpace.of(H, 2)
    assert space.size == 9
    assert space.class_of((1, 1)) == ((1, 1), (1, 2), (2, 1), (2, 2))
    assert space.class_of((1, 2)) == ((1, 3), (2, 3))
    assert space.class_of((2, 2)) == ((3, 3),)
    seen = [v for vs in space.classes.values() for v in vs]
    assert sorted(seen) == sorted(product((1, 2, 3), repeat=2))
    assert space.empty_classes() == []


def test_tuple_space_cap():
    with pytest.raises(CapExceededError):
        TupleVertexSpace.of(colored_block(1, 3), 3, tuple_cap=26)
    with pytest.raises(InputError):
        TupleVertexSpace(0, 2, (1, 2), 2)


def test_sizes_and_layout():
    H = colored_block(2, 2)
    out = build_g_c(H, 2, 1)
    assert out.graph.n == g_c_size(H, 2, 1) == 4 + 2 * 2 + 4 * 4
    assert out.role_counts() == {"V": 4, "C": 4, "W": 16}
    assert out.vertex("V", (1, 1)) == 1 and out.vertex("V", (2, 2)) == 4
    assert out.vertex("C", 1, 1, 1) == 5
    assert out.vertex("W", (1, 1), (1, 1), 1) == 9


@pytest.mark.parametrize("ds, d, c, size", [(2, 2, 1, 4), (2, 2, 2, 8), (1, 2, 2, 6)])
def test_witness_sizes(ds, d, c, size):
    out = build_g_c(colored_block(ds, d), c, 1)
    witness = extract_yes_witness_main(out, full_block(ds, d))
    assert witness.size == size == d ** c + ds * c
    assert is_dominating(out.graph, witness.vertices)


def test_isolated_tuples_force_exact_gamma():
    out = build_g_c(colored_block(1, 2), 2, 1)
    assert exact_min_dominating_set(out.graph).size == 6


def test_w_only_sees_tuples_differing_everywhere():
    H = ColoredBipartiteGraph(1, 2, frozenset({(1, 1)}), alpha=(1,), beta=(1, 1), a_colors=1, b_colors=1)
    out = build_g_c(H, 2, 1)
    w = out.vertex("W", (1, 1), (1, 1), 1)
    assert out.graph.has_edge(w, out.vertex("V", (2, 2)))
    for v in ((1, 1), (1, 2), (2, 1)):
        assert not out.graph.has_edge(w, out.vertex("V", v))
    assert out.graph.has_edge(out.vertex("V", (1, 2)), out.vertex("V", (2, 1)))


def test_beta_must_be_surjective_on_witness():
    H = ColoredBipartiteGraph(1, 3, frozenset(product((1,), (1, 2, 3))), alpha=(1,), beta=(1, 2, 2),
                              a_colors=1, b_colors=2)
    out = build_g_c(H, 1, 1)
    with pytest.raises(WitnessError, match="β not surjective"):
        extract_yes_witness_main(out, ((1,), (2, 3)))


def test_edges_rederive_exactly():
    H = ColoredBipartiteGraph(3, 4, frozenset({(1, 1), (1, 2), (2, 2), (3, 3), (3, 4)}), alpha=(1, 2, 2),
                              beta=(1, 2, 1, 2), a_colors=2, b_colors=2)
    out = build_g_c(H, 2, 1)
    assert rederive_edges(out) == out.graph.edges
    assert sum(out.manifest["edge_rules"].values()) == out.graph.m


def test_argument_checks():
    H = colored_block(2, 2)
    with pytest.raises(InputError):
        build_g_c(H, 0, 1)
    with pytest.raises(InputError):
        build_g_c(H, 1, 0)
    with pytest.raises(CapExceededError):
        build_g_c(H, 2, 1, vertex_cap=23)


@pytest.mark.parametrize("ds, d, c", list(product((2, 4), (2, 3), (1, 2))))
def test_completeness_on_blocks(ds, d, c):
    out = build_g_c(colored_block(ds, d), c, 1)
    witness = extract_yes_witness_main(out, full_block(ds, d))
    assert witness.size == d ** c + ds * c
    assert is_dominating(out.graph, witness.vertices)
    if out.graph.n <= 24:
        assert exact_min_dominating_set(out.graph).size <= witness.size


@pytest.mark.slow
@pytest.mark.parametrize("s, d, c", list(product((1, 2), (2, 3), (1, 2))))
def test_completeness_on_duplicated_planted_instances(s, d, c):
    inst = duplicate_side(synth_yes_instance(s, d), 2)
    colored = attach_colorings(inst, inst.s, d)
    out = build_g_c(colored, c, 1)
    witness = extract_yes_witness_main(out, lift_planted_biclique(inst, colored))
    assert witness.size == d ** c + 2 * s * c
    assert is_dominating(out.graph, witness.vertices)
    if out.graph.n <= 25:
        assert exact_min_dominating_set(out.graph).size <= witness.size


@pytest.mark.slow
def test_c1_empirical_gap():
    s, d, t = 2, 2, 1
    for seed in range(6):
        yes = synth_yes_instance(s, d, 1, 1, seed=seed)
        no = synth_no_instance(s, d - 1, s + 1, d + 1, 0.5, seed=seed * 64, d=d)
        yes_out = build_g_c(attach_colorings(yes, s, d), 1, t)
        assert yes_out.source.a_size > yes.a_size
        g_yes = exact_min_dominating_set(yes_out.graph)
        g_no = exact_min_dominating_set(build_g_c(attach_colorings(no, s, d), 1, t).graph)
        assert g_yes.optimal and g_no.optimal
        assert g_no.size > d + s * t >= g_yes.size


# ========================= counting bound ==========================

def test_product_bound_single_coordinate():
    V = [(1,), (2,)]
    verdict = product_bound_check(V, {(1,): 1, (2,): 1}, t=3, c=1, delta=1)
    assert verdict.hypothesis_holds and verdict.bound == 2 and verdict.slack == 0


def test_product_bound_hypothesis_failure():
    V = [(1,), (2,), (3,)]
    verdict = product_bound_check(V, {v: 1 for v in V}, t=3, c=1, delta=1)
    assert not verdict.hypothesis_holds and verdict.failing_coordinate == 1 and verdict.slack is None


def test_product_bound_input_checks():
    with pytest.raises(InputError, match="not total"):
        product_bound_check([(1,)], {}, t=3, c=1, delta=1)
    with pytest.raises(InputError):
        product_bound_check([(4,)], {(4,): 1}, t=3, c=1, delta=1)
    with pytest.raises(InputError):
        product_bound_check([(1,)], {(1,): 1}, t=2, c=1, delta=2)
    with pytest.raises(InputError):
        product_bound_check([(1, 2)], {(1, 2): 3}, t=2, c=2, delta=1)


def test_tight_witness_meets_bound():
    V, theta = tight_witness(2, 2, 1)
    assert V == [(1, 2), (2, 1), (2, 2)]
    assert theta == {(1, 2): 2, (2, 1): 1, (2, 2): 1}
    assert product_bound_check(V, theta, 2, 2, 1).slack == 0


@pytest.mark.slow
@pytest.mark.parametrize("t, c, delta", [(t, c, delta) for t in (2, 3) for c in (1, 2) for delta in (1, 2)
                                         if delta < t])
def test_product_bound_exhaustive(t, c, delta):
    report = exhaust_product_bound(t, c, delta, jobs=1)
    assert report["cases"] == (1 + c) ** (t ** c)
    assert report["max_size"] == report["bound"] == t ** c - delta ** c
    assert report["tight"] and report["witness"] is not None


# ========================= parameters ==========================

def test_params_main_k3_c1():
    p = derive_params_main(3, 1)
    assert p.s == 3
    assert p.d_base == 480 ** 111
    assert p.adjusted
    assert p.d == 480 ** 1332 and p.root == 480 ** 111
    assert p.t == 480 ** 1221
    assert all(p.conditions.values())
    assert p.witness_size == p.d + 2 * 3 * p.t


def test_params_main_json_uses_digit_strings():
    data = derive_params_main(3, 1).to_dict()
    assert data["d"] == str(480 ** 1332)
    assert data["d_digits"] == len(str(480 ** 1332))
    assert data["adjusted"] is True


def test_params_main_domain():
    for args in ((2, 1), (3, 0)):
        with pytest.raises(InputError):
            derive_params_main(*args)
    with pytest.raises(InputError):
        derive_params_main(3, 1, delta=0)


def test_superconstant_c():
    # 32^(9/10) = 2^4.5
    assert superconstant_c(32, "1/2") == 23
    with pytest.raises(InputError):
        superconstant_c(32, 1)


@pytest.mark.parametrize("k, c", [(3, 1), (3, 2), (4, 1)])
def test_params_main_bounds_hold(k, c):
    p = derive_params_main(k, c)
    assert all(p.conditions.values())
    assert set(p.t_bounds) == {"a", "b", "c"} and all(p.t_bounds.values())
    assert p.soundness_slack
    assert p.witness_size < p.completeness_bound
    assert all(p.regime_flags.values())


def test_superconstant_params():
    # 3^(9/10) is about 2.69
    p = derive_params_superconstant(3, "1/2")
    assert p.c == 3
    assert (p.d, p.t) == (derive_params_main(3, 3).d, derive_params_main(3, 3).t)
