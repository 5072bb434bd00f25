import pytest

from kopt_adversary import ms_family as MS
from kopt_adversary import reduction as R
from kopt_adversary import reduction25 as R25
from kopt_adversary import verify as V
from kopt_adversary.core import PreconditionViolation, Swap, Tour, apply_swap, cut_value
from kopt_adversary.pivots import PivotRule

from conftest import reduction25


def test_sequences_cover_each_vertex_twice_and_each_edge_once():
    inst = MS.build_h_prime_np(1, 3)
    seqs = R25.build_star_sequences(1, 3, inst)
    assert sum(len(s.vertices) for s in seqs) == 2 * inst.graph.n
    edges = sorted((min(s.vertices[0], x), max(s.vertices[0], x)) for s in seqs for x in s.vertices[1:])
    assert edges == sorted((u, v) for u, v, _ in inst.graph.edges())


def test_named_sequence_present():
    inst = MS.build_h_prime_np(2, 7)
    seqs = {tuple(inst.name(v) for v in s.vertices) for s in R25.build_star_sequences(2, 7, inst)}
    q = 6
    assert (MS.v_(0, 1), MS.u_(0, 1, 8, 1), MS.u_(1, 4, 1, q)) in seqs


def test_irregular_pairs_use_star2_ir():
    inst = MS.build_h_prime_np(1, 7)
    regular = {inst.idx(x) for x in R25.regular_vertices(1)}
    for s in R25.build_star_sequences(1, 7, inst):
        if len(s.vertices) == 2 and sum(v in regular for v in s.vertices) == 1:
            assert s.kind == "s2_ir"


@pytest.mark.parametrize("n", [1, 2])
def test_structure(n):
    red = reduction25(n, 7)
    assert R25.star_kind_counts(red)["s4"] == n
    assert R25.check_simple(red)


def test_h_1_7_sizes():
    red = reduction25(1, 7)
    assert (red.graph.n, red.graph.m) == (184, 393)


@pytest.mark.parametrize("n", [1, 2])
def test_initial_tour(n):
    red = reduction25(n, 7)
    t = R25.initial_tour_tau0(red)
    assert R25.phi(red, t) == red.h_instance.initial_cut
    s = red.weight(t) + cut_value(red.h, red.h_instance.initial_cut)
    assert -n * red.eps_tilde <= s <= 0


def test_p_precondition():
    with pytest.raises(PreconditionViolation):
        R25.build_reduction_25(1, 5)


def test_eps_tilde_bound_enforced():
    with pytest.raises(PreconditionViolation):
        R25.build_reduction_25(1, 7, eps_tilde=1)


def test_non_standard_tour_reported():
    red = reduction25(1, 7)
    t = R25.initial_tour_tau0(red)
    o = list(t.order)
    o[1], o[5] = o[5], o[1]
    res = R25.is_standard_25(red, Tour.from_order(o))
    assert isinstance(res, R.NotStandard) and str(res)


@pytest.mark.parametrize("pivot", [PivotRule.steepest(), PivotRule.first(), PivotRule.random(3)], ids=str)
def test_run_from_tau0_n1(pivot):
    red = reduction25(1, 7)
    res = V.check_run_25(red, R25.initial_tour_tau0(red), pivot)
    assert res["problems"] == []
    assert res["swaps"] == len(res["flips"]) == 77


def test_first_swap_changes_at_most_one_vertex():
    red = reduction25(1, 7)
    t = R25.initial_tour_tau0(red)
    from kopt_adversary.kopt import KSpec, enumerate_improving_swaps
    c0 = R25.phi(red, t)
    for sw, _ in enumerate_improving_swaps(red.instance, t, KSpec(3, True)):
        c1 = R25.phi(red, apply_swap(t, sw))
        assert sum(a != b for a, b in zip(c0.assignment, c1.assignment)) <= 1


def test_star4_two_swap_keeps_image_n2():
    red = reduction25(2, 7)
    res = V.check_run_25(red, R25.initial_tour_tau0(red), PivotRule.steepest())
    assert res["problems"] == []
    assert res["swaps"] == 285 and len(res["flips"]) == 284
    s4 = [red.gadgets[red.star_gadget[i]] for i, s in enumerate(red.sequences) if s.kind == "s4"]
    seen = False
    for before, after in zip(res["trace"].tours(), list(res["trace"].tours())[1:]):
        if R25.phi(red, before) != R25.phi(red, after):
            continue
        for pg in s4:
            lb = pg.gadget.labels_of(pg.restrict(before.edges))
            la = pg.gadget.labels_of(pg.restrict(after.edges))
            seen |= (lb, la) == (("n",), ("b",))
        assert len(Swap.between(before, after).removed) == 2
    assert seen
