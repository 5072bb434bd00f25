import math
from fractions import Fraction as F

import pytest

from kopt_adversary.core import (Cut, DimensionError, GraphError, NotATour, PathCover, PreconditionViolation,
                                 Swap, Tour, WeightedGraph, apply_flip, apply_swap, as_rational, cut_value,
                                 edge_key, find_path_cover, flip_gain, girth, is_hamiltonian, tour_weight,
                                 validate_cover)


def triangle():
    return WeightedGraph(["a", "b", "c"], [(0, 1, 1), (1, 2, F(1, 2)), (0, 2, -3)])


def test_graph_basics():
    g = triangle()
    assert g.n == 3 and g.m == 3
    assert g.weight(2, 1) == F(1, 2)
    assert g.index("c") == 2 and g.label(0) == "a"
    assert sorted(g.neighbors(0)) == [1, 2]
    assert g == WeightedGraph.from_labelled(["a", "b", "c"], [("a", "b", 1), ("b", "c", "1/2"), ("a", "c", -3)])


@pytest.mark.parametrize("edges", [[(0, 0, 1)], [(0, 1, 1), (1, 0, 2)], [(0, 5, 1)]])
def test_graph_rejects_bad_edges(edges):
    with pytest.raises((GraphError, ValueError)):
        WeightedGraph(["a", "b"], edges)


def test_as_rational_is_exact():
    assert as_rational("3/7") == F(3, 7)
    with pytest.raises(TypeError):
        as_rational(0.5)


def test_cut_value_and_gain_agree():
    g = triangle()
    for code in range(8):
        c = Cut.from_int(code, 3)
        for v in range(3):
            assert cut_value(g, apply_flip(c, v)) - cut_value(g, c) == flip_gain(g, c, v)


def test_cut_size_checked():
    with pytest.raises(DimensionError):
        cut_value(triangle(), Cut((True,)))


def test_cut_codes_round_trip():
    c = Cut.from_ones([0, 3], 5)
    assert Cut.from_int(c.to_int(), 5) == c
    assert c.ones() == {0, 3}


def test_tour_canonical_and_order():
    t = Tour.from_order([0, 2, 1, 3])
    assert t == Tour(4, [(0, 2), (1, 2), (1, 3), (0, 3)])
    assert t.successor(t.predecessor(1)) == 1
    assert len(t.canonical()) == 4


def test_tour_rejects_subtours():
    with pytest.raises(NotATour):
        Tour(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert not is_hamiltonian(4, [(0, 1), (1, 2), (2, 3)])


def test_swap_validation_and_apply():
    t = Tour.from_order([0, 1, 2, 3])
    sw = Swap(frozenset({(0, 1), (2, 3)}), frozenset({(0, 2), (1, 3)}))
    u = apply_swap(t, sw)
    assert Swap.between(t, u) == sw
    with pytest.raises(ValueError):
        Swap(frozenset({(0, 1)}), frozenset())
    with pytest.raises(PreconditionViolation):
        apply_swap(u, sw)


def test_tour_weight_uses_big_m_for_non_edges():
    g = triangle()
    g4 = WeightedGraph(["a", "b", "c", "d"], list(g.edges()))
    t = Tour.from_order([0, 1, 2, 3])
    assert tour_weight(g4, t, F(10)) == 1 + F(1, 2) + 10 + 10


def test_girth():
    assert girth(triangle()) == 3
    c6 = WeightedGraph([str(i) for i in range(6)], [(i, (i + 1) % 6, 1) for i in range(6)])
    assert girth(c6) == 6
    path = WeightedGraph(["a", "b", "c"], [(0, 1, 1), (1, 2, 1)])
    assert girth(path) == math.inf


def test_cover_validation():
    g = WeightedGraph(["a", "b", "c"], [(0, 1, 1), (1, 2, 1)])
    good = PathCover(((0, 1, 2), (0,), (1,), (2,)))
    assert validate_cover(g, good) == []
    bad = PathCover(((0, 1, 2), (0, 1), (2,)))
    assert validate_cover(g, bad)


def test_find_path_cover_on_small_tree():
    g = WeightedGraph(list("abcdef"), [(0, 1, 1), (1, 2, 2), (1, 3, -1), (3, 4, 1), (3, 5, 2)])
    cover = find_path_cover(g)
    assert cover is not None and validate_cover(g, cover) == []


def test_edge_key_orders():
    assert edge_key(5, 2) == (2, 5)
