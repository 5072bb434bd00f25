import random
from fractions import Fraction as F

import pytest

from kopt_adversary import ms_family as MS
from kopt_adversary import reduction as R
from kopt_adversary.core import Cut, PathCover, Tour, WeightedGraph, cut_value, girth
from kopt_adversary.kopt import KSpec, enumerate_swaps, hamiltonian_cycles

from conftest import h_instance, reduction


def test_single_vertex_buoy_instance():
    h, cover = R.single_vertex_h()
    red = R.build_reduction(h, cover, 4)
    kinds = sorted(pg.gadget.kind for pg in red.gadgets)
    assert kinds == ["buoy", "path1", "path1"]
    a = R.standard_tour_from_cut(red, Cut((False,))).tour
    b = R.standard_tour_from_cut(red, Cut((True,))).tour
    assert len(a.edges - b.edges) == 4
    tours = hamiltonian_cycles(red.graph)
    assert sorted(t.canonical() for t in tours) == sorted([a.canonical(), b.canonical()])


def test_single_vertex_one_side_engages_buoy_one_side():
    h, cover = R.single_vertex_h()
    red = R.build_reduction(h, cover, 4)
    view = R.standard_tour_from_cut(red, Cut((True,)))
    buoy = red.gadgets[red.vertex_gadget[0]]
    assert view.labels[buoy.gid] == "odd"
    local = buoy.restrict(view.tour.edges)
    assert local == buoy.gadget.catalog["odd"]


def test_four_swap_between_buoy_tours_is_enumerated():
    h, cover = R.single_vertex_h()
    red = R.build_reduction(h, cover, 4)
    a = R.standard_tour_from_cut(red, Cut((False,))).tour
    b = R.standard_tour_from_cut(red, Cut((True,))).tour
    moves = [sw for sw, _ in enumerate_swaps(red.instance, a, KSpec(4), improving_only=False)]
    assert any(sw.added == b.edges - a.edges for sw in moves)


@pytest.mark.parametrize("k", [3, 4, 5])
def test_single_vertex_flip_is_k_swap(k):
    h, cover = R.single_vertex_h()
    red = R.build_reduction(h, cover, k)
    a = R.standard_tour_from_cut(red, Cut((False,))).tour
    b = R.standard_tour_from_cut(red, Cut((True,))).tour
    assert len(a.edges - b.edges) == k


def test_h_1_15_is_simple_and_sized(red_1_15):
    red = red_1_15[3]
    assert girth(red.h) == 18
    assert (red.graph.n, red.graph.m) == (732, 1242)
    assert (red_1_15[4].graph.n, red_1_15[5].graph.n) == (1104, 1476)


def test_size_audit_h_1_3():
    inst = h_instance(1, 3)
    red = R.build_reduction(inst.graph, MS.canonical_cover(1, 3, inst), 3, check_girth=False)
    total_v = sum(len(pg.gadget.names) for pg in red.gadgets)
    total_e = sum(len(pg.gadget.edges) for pg in red.gadgets)
    # every H-vertex glues two portals per attachment; PP gluing is cyclic
    assert red.graph.n == total_v - 4 * inst.graph.n - len(red.cover)
    assert red.graph.m == total_e


def test_girth_precondition():
    inst = h_instance(1, 3)
    with pytest.raises(R.GirthTooSmall):
        R.build_reduction(inst.graph, MS.canonical_cover(1, 3, inst), 3)


def test_invalid_cover_rejected():
    h = WeightedGraph(["a", "b"], [(0, 1, 1)])
    with pytest.raises(R.CoverInvalid):
        R.build_reduction(h, PathCover(((0, 1), (0,))), 5)


@pytest.mark.parametrize("k", [3, 4, 5])
def test_weights_and_round_trip_on_h_1_15(red_1_15, k):
    red = red_1_15[k]
    rng = random.Random(k)
    for _ in range(20):
        c = Cut(tuple(rng.random() < 0.5 for _ in range(red.h.n)))
        t = R.standard_tour_from_cut(red, c).tour
        assert red.weight(t) == -cut_value(red.h, c)
        assert R.cut_from_standard_tour(red, t) == c


def test_exhaustive_round_trip_five_vertex_tree():
    h = WeightedGraph(list("abcde"), [(0, 1, 2), (1, 2, -1), (2, 3, 3), (1, 4, 1)])
    from kopt_adversary.core import find_path_cover
    cover = find_path_cover(h)
    red = R.build_reduction(h, cover, 3)
    for code in range(32):
        c = Cut.from_int(code, 5)
        view = R.standard_tour_from_cut(red, c)
        assert isinstance(R.is_standard(red, view.tour), R.StandardTourView)
        assert R.cut_from_standard_tour(red, view.tour) == c


def test_non_construction_edge_is_not_standard():
    h, cover = R.single_edge_h(2)
    red = R.build_reduction(h, cover, 3)
    t = Tour.from_order(list(range(red.graph.n)))
    res = R.is_standard(red, t)
    assert isinstance(res, R.NotStandard) and "non-construction" in str(res)
    with pytest.raises(R.NotStandard):
        R.cut_from_standard_tour(red, t)


def test_five_swap_across_path_gadgets_has_witness():
    h, cover = R.single_vertex_h()
    red = R.build_reduction(h, cover, 4)
    base = R.standard_tour_from_cut(red, Cut((False,))).tour
    owners = {e: red.edge_owner[e] for e in base.edges}
    rng = random.Random(0)
    order = list(base.order)
    for _ in range(20000):
        o = list(order)
        for _ in range(3):
            i, j = sorted(rng.sample(range(1, len(o)), 2))
            o[i:j + 1] = reversed(o[i:j + 1])
        t = Tour.from_order(o)
        gone = base.edges - t.edges
        if len(gone) == 5 and len({owners[e] for e in gone} & set(red.path_gadget)) >= 2:
            break
    else:
        pytest.fail("no suitable 5-swap found")
    res = R.is_standard(red, t)
    assert isinstance(res, R.NotStandard)


def test_every_finite_tour_standard_for_k5_single_edge():
    h, cover = R.single_edge_h(F(5, 2))
    red = R.build_reduction(h, cover, 5)
    tours = hamiltonian_cycles(red.graph)
    assert len(tours) == 4
    assert all(isinstance(R.is_standard(red, t), R.StandardTourView) for t in tours)


def test_cut_size_mismatch():
    h, cover = R.single_edge_h(1)
    red = R.build_reduction(h, cover, 3)
    with pytest.raises(Exception):
        R.standard_tour_from_cut(red, Cut((True,)))


def test_tsplib_scale():
    inst = h_instance(1, 15)
    red = reduction(1, 15, 3)
    assert R.tsplib_scale(red.graph, red.big_m) % inst.eps.denominator == 0
