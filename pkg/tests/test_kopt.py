import random
from fractions import Fraction as F

import networkx as nx
import pytest

from kopt_adversary import kernels
from kopt_adversary import reduction as R
from kopt_adversary.core import PreconditionViolation, Tour, TooLarge, WeightedGraph
from kopt_adversary.kopt import (KSpec, TSPInstance, dense_improving_two_swaps, enumerate_improving_swaps,
                                 enumerate_swaps, hamiltonian_cycles, metrize, naive_swaps, run_kopt,
                                 tour_transition_graph, triangle_violation)
from kopt_adversary.maxcut import run_flip
from kopt_adversary.pivots import PivotRule

from conftest import h_instance, reduction

KSTRS = ["2", "2.5", "3", "4", "5"]


def complete(m, rng, lo=1, hi=30):
    es = [(u, v, F(rng.randint(lo, hi))) for u in range(m) for v in range(u + 1, m)]
    return TSPInstance(WeightedGraph([str(i) for i in range(m)], es), F(10 ** 6))


def sparse(m, rng, p=0.6):
    order = list(range(m))
    rng.shuffle(order)
    es = {}
    for a, b in zip(order, order[1:] + order[:1]):
        es[(min(a, b), max(a, b))] = F(rng.randint(-10, 10))
    for u in range(m):
        for v in range(u + 1, m):
            if (u, v) not in es and rng.random() < p:
                es[(u, v)] = F(rng.randint(-10, 10), rng.randint(1, 3))
    g = WeightedGraph([str(i) for i in range(m)], es)
    return TSPInstance(g, F(1000)), Tour.from_order(order)


def test_kspec_parse():
    assert KSpec.parse("2.5") == KSpec(3, True)
    assert KSpec.parse(4) == KSpec(4)
    assert str(KSpec.parse("2.5")) == "2.5"
    with pytest.raises(ValueError):
        KSpec.parse("1")
    with pytest.raises(ValueError):
        KSpec.parse("3.5")


@pytest.mark.parametrize("m", [4, 5, 7, 10, 13])
def test_two_swap_count_on_complete_graph(m):
    inst = complete(m, random.Random(m))
    t = Tour.from_order(list(range(m)))
    assert len(enumerate_swaps(inst, t, KSpec(2), improving_only=False)) == m * (m - 3) // 2


def test_crossed_reconnection_on_four_vertices():
    inst = complete(4, random.Random(0))
    t = Tour.from_order([0, 1, 2, 3])
    moves = enumerate_swaps(inst, t, KSpec(2), improving_only=False)
    assert [(sorted(s.removed), sorted(s.added)) for s, _ in moves] == [([(0, 1), (2, 3)], [(0, 2), (1, 3)]),
                                                                        ([(0, 3), (1, 2)], [(0, 2), (1, 3)])]


@pytest.mark.parametrize("seed", range(6))
@pytest.mark.parametrize("kstr", KSTRS)
def test_matches_naive_oracle_sparse(seed, kstr):
    rng = random.Random(seed)
    inst, t = sparse(rng.randint(6, 10), rng)
    ks = KSpec.parse(kstr)
    for only in (True, False):
        fast = enumerate_swaps(inst, t, ks, improving_only=only)
        slow = naive_swaps(inst, t, ks, improving_only=only)
        assert fast == slow


@pytest.mark.parametrize("kstr", ["2", "2.5", "3", "4"])
def test_matches_naive_oracle_complete(kstr):
    rng = random.Random(9)
    inst = complete(9, rng)
    order = list(range(9))
    rng.shuffle(order)
    t = Tour.from_order(order)
    assert enumerate_swaps(inst, t, KSpec.parse(kstr)) == naive_swaps(inst, t, KSpec.parse(kstr))


def test_naive_size_guard():
    inst = complete(13, random.Random(0))
    with pytest.raises(TooLarge):
        naive_swaps(inst, Tour.from_order(list(range(13))), KSpec(2))


@pytest.mark.parametrize("seed", range(4))
def test_two_five_between_two_and_three(seed):
    rng = random.Random(seed)
    inst = complete(8, rng)
    t = Tour.from_order(rng.sample(range(8), 8))
    two = {s for s, _ in enumerate_swaps(inst, t, KSpec(2), improving_only=False)}
    mid = {s for s, _ in enumerate_swaps(inst, t, KSpec(3, True), improving_only=False)}
    three = {s for s, _ in enumerate_swaps(inst, t, KSpec(3), improving_only=False)}
    assert two <= mid <= three
    assert two != mid != three


@pytest.mark.skipif(kernels.c_impl is None, reason="compiled extension not built")
@pytest.mark.parametrize("kstr", KSTRS)
def test_backends_agree(kstr):
    rng = random.Random(4)
    inst, t = sparse(11, rng)
    a = enumerate_swaps(inst, t, KSpec.parse(kstr), improving_only=False, impl=kernels.c_impl)
    b = enumerate_swaps(inst, t, KSpec.parse(kstr), improving_only=False, impl=kernels.py_impl)
    assert a == b


def test_six_swaps_use_python_path():
    rng = random.Random(2)
    inst, t = sparse(9, rng, p=0.5)
    assert enumerate_swaps(inst, t, KSpec(6)) == naive_swaps(inst, t, KSpec(6))


def test_run_strictly_decreases_and_ends_locally():
    rng = random.Random(1)
    inst = complete(10, rng)
    tr = run_kopt(inst, Tour.from_order(list(range(10))), KSpec(3), PivotRule.random(5))
    prev = tr.initial_weight
    for s in tr.steps:
        assert s.delta < 0 and s.weight == prev + s.delta
        prev = s.weight
    final = list(tr.tours())[-1]
    assert inst.tour_weight(final) == tr.final_weight
    assert enumerate_improving_swaps(inst, final, KSpec(3)) == []


def test_step_limit_zero():
    inst = complete(6, random.Random(1))
    tr = run_kopt(inst, Tour.from_order(list(range(6))), KSpec(2), step_limit=0)
    assert len(tr) == 0


def test_infinite_tour_rejected():
    inst, t = sparse(6, random.Random(3), p=0)
    bad = Tour.from_order([0, 2, 4, 1, 3, 5])
    if inst.is_finite(bad):
        pytest.skip("random graph happened to contain the tour")
    with pytest.raises(PreconditionViolation):
        enumerate_swaps(inst, bad, KSpec(2))


def test_transition_graph_matches_oracle_and_is_acyclic():
    rng = random.Random(6)
    inst = complete(7, rng)
    for kstr in ("2", "2.5", "3"):
        fast = tour_transition_graph(inst, KSpec.parse(kstr))
        slow = tour_transition_graph(inst, KSpec.parse(kstr), oracle=True)
        assert set(fast.edges) == set(slow.edges)
        assert nx.is_directed_acyclic_graph(fast)
    assert len(hamiltonian_cycles(inst.graph)) == 360


@pytest.mark.parametrize("pivot", [PivotRule.steepest(), PivotRule.first(), PivotRule.random(1)], ids=str)
@pytest.mark.parametrize("k", [3, 4])
def test_reduction_run_equals_flip_run(k, pivot):
    inst = h_instance(1, 15)
    red = reduction(1, 15, k)
    start = R.standard_tour_from_cut(red, inst.initial_cut).tour
    tr = run_kopt(red.instance, start, KSpec(k), pivot)
    assert len(tr) == len(run_flip(inst.graph, inst.initial_cut, pivot)) == 154


def test_metrize_on_metric_instance_is_identity():
    inst = complete(6, random.Random(0), lo=10, hi=12)
    assert triangle_violation(inst) <= 0
    m = metrize(inst)
    assert m.shift == 0 and m.graph == inst.graph


@pytest.mark.parametrize("seed", range(3))
def test_metrize_gives_triangle_inequality(seed):
    rng = random.Random(seed)
    inst, _ = sparse(12, rng)
    m = metrize(inst)
    mat, _ = m.dense()
    n = m.graph.n
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if len({a, b, c}) == 3:
                    assert mat[a, c] <= mat[a, b] + mat[b, c]


def test_metrize_preserves_improving_moves():
    rng = random.Random(8)
    inst, t = sparse(10, rng)
    m = metrize(inst)
    for kstr in ("2", "2.5", "3"):
        a = [s for s, _ in enumerate_swaps(inst, t, KSpec.parse(kstr))]
        b = [s for s, _ in enumerate_swaps(m, t, KSpec.parse(kstr))]
        assert a == b


def test_dense_two_swaps_match_sparse_on_complete_graph():
    rng = random.Random(12)
    inst = complete(11, rng)
    order = rng.sample(range(11), 11)
    t = Tour.from_order(order)
    mat, _ = inst.dense()
    pos = dense_improving_two_swaps(mat, order)
    want = set()
    for sw, _ in enumerate_improving_swaps(inst, t, KSpec(2)):
        idx = sorted(min(order.index(u), order.index(v)) if {order.index(u), order.index(v)} != {0, 10} else 10
                     for u, v in sw.removed)
        want.add(tuple(idx))
    assert pos == want
