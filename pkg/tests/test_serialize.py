import json
from fractions import Fraction as F

import pytest

from kopt_adversary.core import Cut, Swap, Tour, WeightedGraph
from kopt_adversary.serialize import (cut_from_json, cut_to_json, graph_from_json, graph_to_json, rational_from_json,
                                      rational_to_json, swap_from_json, swap_to_json, tour_from_json, tour_to_json)


def through_text(x):
    return json.loads(json.dumps(x))


def test_rational_exact_for_huge_values():
    x = F(3 ** 200, 2 ** 150 + 1)
    assert rational_from_json(through_text(rational_to_json(x))) == x
    with pytest.raises(ValueError):
        rational_from_json({"num": "1", "den": "0"})


def test_graph_cut_tour_swap_round_trip():
    g = WeightedGraph(["a", "b", "c"], [(0, 1, F(-7, 3)), (1, 2, 5)])
    assert graph_from_json(through_text(graph_to_json(g))) == g
    c = Cut((True, False, True))
    assert cut_from_json(through_text(cut_to_json(c))) == c
    t = Tour.from_order([2, 0, 3, 1])
    assert tour_from_json(through_text(tour_to_json(t))) == t
    s = Swap(frozenset({(0, 1), (2, 3)}), frozenset({(0, 2), (1, 3)}))
    assert swap_from_json(through_text(swap_to_json(s))) == s


def test_tour_size_mismatch():
    with pytest.raises(ValueError):
        tour_from_json({"n": 5, "order": [0, 1, 2]})
