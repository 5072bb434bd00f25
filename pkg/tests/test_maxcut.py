import random
from fractions import Fraction as F

import pytest

from kopt_adversary import kernels
from kopt_adversary.core import Cut, WeightedGraph, cut_value
from kopt_adversary.maxcut import (TRACE_COLUMNS, cut_transition_graph, improving_flips, project_trace, run_flip,
                                   run_flip_reference)
from kopt_adversary.pivots import PivotRule

PIVOTS = [PivotRule.first(), PivotRule.steepest(), PivotRule.random(0), PivotRule.random(11)]


def random_graph(rng, n, p=0.5):
    es = [(u, v, F(rng.randint(-9, 9), rng.randint(1, 4))) for u in range(n) for v in range(u + 1, n)
          if rng.random() < p]
    return WeightedGraph([f"x{i}" for i in range(n)], es)


@pytest.mark.parametrize("seed", range(8))
@pytest.mark.parametrize("pivot", PIVOTS, ids=str)
def test_kernel_run_equals_reference(seed, pivot):
    rng = random.Random(seed)
    g = random_graph(rng, 12)
    c = Cut(tuple(rng.random() < 0.5 for _ in range(12)))
    fast = run_flip(g, c, pivot)
    slow = run_flip_reference(g, c, pivot)
    assert fast.vertices == slow.vertices
    assert fast.final_value == slow.final_value == cut_value(g, fast.final_cut())
    assert not improving_flips(g, fast.final_cut())


@pytest.mark.skipif(kernels.c_impl is None, reason="compiled extension not built")
def test_backends_agree():
    rng = random.Random(3)
    g = random_graph(rng, 16)
    c = Cut(tuple(rng.random() < 0.5 for _ in range(16)))
    for piv in PIVOTS:
        a = run_flip(g, c, piv, impl=kernels.c_impl)
        b = run_flip(g, c, piv, impl=kernels.py_impl)
        assert a.vertices == b.vertices


def test_gains_are_positive_and_values_increase():
    rng = random.Random(5)
    g = random_graph(rng, 10)
    tr = run_flip(g, Cut((False,) * 10))
    prev = tr.initial_value
    for s in tr.steps:
        assert s.gain > 0 and s.value == prev + s.gain
        prev = s.value


def test_step_limit_marks_termination():
    g = WeightedGraph(["a", "b", "c", "d"], [(0, 1, 1), (2, 3, 1)])
    tr = run_flip(g, Cut((False,) * 4), step_limit=1)
    assert len(tr) == 1 and tr.termination == "step-limit"
    with pytest.raises(ValueError):
        run_flip(g, Cut((False,) * 3), step_limit=-1)


def test_transition_graph_of_an_edge():
    g = WeightedGraph(["a", "b"], [(0, 1, 2)])
    tg = cut_transition_graph(g)
    assert set(tg.edges) == {(0, 1), (0, 2), (3, 1), (3, 2)}


def test_transition_graph_arcs_match_flips():
    g = random_graph(random.Random(1), 6)
    tg = cut_transition_graph(g)
    for code in range(64):
        c = Cut.from_int(code, 6)
        want = {code ^ (1 << v) for v, _ in improving_flips(g, c)}
        assert set(tg.successors(code)) == want


def test_csv_schema():
    g = WeightedGraph(["a", "b"], [(0, 1, F(3, 2))])
    text = run_flip(g, Cut((False, False))).to_csv()
    lines = text.splitlines()
    assert lines[0] == ",".join(TRACE_COLUMNS)
    assert lines[1] == "1,flip,a,3,2,3,2"


def test_project_trace():
    assert project_trace([1, 2, 3, 2], {2}) == [1, 3]
