"""k-opt local search for the TSP over sparse instances with a big-M completion."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

import networkx as nx
import numpy as np

from . import kernels
from .core import (Edge, PreconditionViolation, Swap, Tour, TooLarge, WeightedGraph, apply_swap, edge_key,
                   is_hamiltonian)
from .maxcut import TRACE_COLUMNS
from .pivots import PivotRule, XorShift64


@dataclass(frozen=True, eq=False)
class TSPInstance:
    """Construction edges carry their weight; every other pair costs ``big_m``."""

    graph: WeightedGraph
    big_m: Fraction
    shift: Fraction = Fraction(0)

    def weight(self, u: int, v: int) -> Fraction:
        return self.graph.weight(u, v) if self.graph.has_edge(u, v) else self.big_m

    def tour_weight(self, tour: Tour) -> Fraction:
        return sum((self.weight(u, v) for u, v in tour.edges), Fraction(0))

    def is_finite(self, tour: Tour) -> bool:
        return all(self.graph.has_edge(u, v) for u, v in tour.edges)

    def dense(self, dtype=object) -> tuple[np.ndarray, int]:
        """Integer weight matrix (scaled by the returned factor); the diagonal is zero."""
        scale = kernels.common_scale([w for _, _, w in self.graph.edges()] + [self.big_m])
        n = self.graph.n
        mat = np.full((n, n), int(self.big_m * scale), dtype=dtype)
        for u, v, w in self.graph.edges():
            mat[u, v] = mat[v, u] = int(w * scale)
        np.fill_diagonal(mat, 0)
        return mat, scale


@dataclass(frozen=True)
class KSpec:
    k: int
    two_five: bool = False

    def __post_init__(self) -> None:
        if self.two_five and self.k != 3:
            raise ValueError("a 2.5 move set is stored with k = 3")
        if self.k < 2:
            raise ValueError("k must be at least 2")

    @classmethod
    def parse(cls, text: str | int | float) -> "KSpec":
        s = str(text).strip()
        if s == "2.5":
            return cls(3, True)
        try:
            return cls(int(s))
        except ValueError:
            raise ValueError(f"bad k {text!r}") from None

    def __str__(self) -> str:
        return "2.5" if self.two_five else str(self.k)

    def allows(self, swap: Swap) -> bool:
        j = swap.size
        if self.two_five:
            if j == 2:
                return True
            return j == 3 and _has_incident_pair(swap.removed)
        return 2 <= j <= self.k


def _has_incident_pair(edges: Iterable[Edge]) -> bool:
    es = list(edges)
    return any(set(es[i]) & set(es[j]) for i in range(len(es)) for j in range(i + 1, len(es)))


class _Prepared:
    """Integer view of an instance, cached per instance object."""

    def __init__(self, inst: TSPInstance):
        g = inst.graph
        self.ig = kernels.IntGraph.build(g.n, list(g.edges()))
        self.eid = {(u, v): e for e, (u, v) in enumerate(zip(self.ig.eu, self.ig.ev))}


_CACHE: dict[int, tuple[TSPInstance, _Prepared]] = {}


def _prepared(inst: TSPInstance) -> _Prepared:
    hit = _CACHE.get(id(inst))
    if hit is None or hit[0] is not inst:
        if len(_CACHE) > 16:
            _CACHE.clear()
        hit = (inst, _Prepared(inst))
        _CACHE[id(inst)] = hit
    return hit[1]


def _raw_moves(inst: TSPInstance, tour: Tour, kspec: KSpec, improving_only: bool, impl=None):
    if not inst.is_finite(tour):
        raise PreconditionViolation("tour uses an edge outside the construction")
    prep = _prepared(inst)
    ig = prep.ig
    n = tour.n
    in_tour = [False] * len(ig.w)
    for e in tour.edges:
        in_tour[prep.eid[e]] = True
    order = list(tour.order)
    pos = tour.position()
    succ = [0] * n
    pred = [0] * n
    for i, v in enumerate(order):
        succ[v] = order[(i + 1) % n]
        pred[v] = order[i - 1]
    return prep, kernels.enumerate_moves(ig, in_tour, succ, pred, pos, order, kspec.k, kspec.two_five,
                                         improving_only, impl=impl)


def enumerate_swaps(inst: TSPInstance, tour: Tour, kspec: KSpec, improving_only: bool = True,
                    impl=None) -> list[tuple[Swap, Fraction]]:
    """Distinct valid moves of the class, sorted by :meth:`Swap.sort_key`."""
    prep, raw = _raw_moves(inst, tour, kspec, improving_only, impl)
    ig = prep.ig
    found: dict[tuple, tuple[Swap, Fraction]] = {}
    for rem, add, delta in raw:
        key = (tuple(sorted(rem)), tuple(sorted(add)))
        if key in found:
            continue
        sw = Swap(frozenset((ig.eu[e], ig.ev[e]) for e in rem), frozenset((ig.eu[e], ig.ev[e]) for e in add))
        found[key] = (sw, Fraction(delta, ig.scale))
    return sorted(found.values(), key=lambda sd: sd[0].sort_key())


def enumerate_improving_swaps(inst: TSPInstance, tour: Tour, kspec: KSpec, impl=None):
    return enumerate_swaps(inst, tour, kspec, True, impl)


def choose_move(moves: Sequence[tuple[Swap, Fraction]], pivot: PivotRule, rng: XorShift64 | None) -> int:
    if pivot.kind == "first":
        return 0
    if pivot.kind == "steepest":
        best = 0
        for i, (_, d) in enumerate(moves):
            if d < moves[best][1]:
                best = i
        return best
    assert rng is not None
    return rng.index(len(moves))


@dataclass(frozen=True)
class SwapStep:
    swap: Swap
    delta: Fraction
    weight: Fraction


@dataclass
class SwapTrace:
    instance: TSPInstance
    initial: Tour
    initial_weight: Fraction
    kspec: KSpec
    steps: list[SwapStep] = field(default_factory=list)
    termination: str = "local-optimum"

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def final_weight(self) -> Fraction:
        return self.steps[-1].weight if self.steps else self.initial_weight

    def tours(self) -> Iterator[Tour]:
        t = self.initial
        yield t
        for s in self.steps:
            t = apply_swap(t, s.swap)
            yield t

    def to_csv(self) -> str:
        g = self.instance.graph
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(TRACE_COLUMNS)
        for i, s in enumerate(self.steps, 1):
            rem = ";".join(f"{g.label(u)}~{g.label(v)}" for u, v in sorted(s.swap.removed))
            add = ";".join(f"{g.label(u)}~{g.label(v)}" for u, v in sorted(s.swap.added))
            wr.writerow([i, f"{s.swap.size}-swap", f"-{rem} +{add}", s.delta.numerator, s.delta.denominator,
                         s.weight.numerator, s.weight.denominator])
        return buf.getvalue()


def run_kopt(inst: TSPInstance, tour: Tour, kspec: KSpec, pivot: PivotRule = PivotRule(),
             step_limit: int | None = None,
             on_step: Callable[[Tour, list[tuple[Swap, Fraction]]], None] | None = None,
             impl=None) -> SwapTrace:
    """Apply improving moves chosen by ``pivot`` until none is left or ``step_limit`` is hit.

    ``on_step`` sees each visited tour together with its improving moves.
    """
    if step_limit is not None and step_limit < 0:
        raise ValueError("step_limit must be non-negative")
    rng = XorShift64(pivot.seed) if pivot.kind == "random" else None
    w = inst.tour_weight(tour)
    trace = SwapTrace(inst, tour, w, kspec)
    cur = tour
    while True:
        if step_limit is not None and len(trace.steps) >= step_limit:
            if enumerate_improving_swaps(inst, cur, kspec, impl):
                trace.termination = "step-limit"
            return trace
        moves = enumerate_improving_swaps(inst, cur, kspec, impl)
        if on_step is not None:
            on_step(cur, moves)
        if not moves:
            return trace
        sw, d = moves[choose_move(moves, pivot, rng)]
        cur = apply_swap(cur, sw)
        w += d
        trace.steps.append(SwapStep(sw, d, w))


# ---------------------------------------------------------------------------
# independent oracle


NAIVE_LIMIT = 12


def naive_swaps(inst: TSPInstance, tour: Tour, kspec: KSpec, improving_only: bool = True):
    """Subsets of tour edges refilled by every degree-matching set of construction edges."""
    n = tour.n
    if n > NAIVE_LIMIT:
        raise TooLarge(f"naive enumeration limited to {NAIVE_LIMIT} vertices")
    g = inst.graph
    tedges = sorted(tour.edges)
    out: dict[Swap, Fraction] = {}
    from itertools import combinations

    for j in range(2, kspec.k + 1):
        for rem in combinations(tedges, j):
            if kspec.two_five and j == 3 and not _has_incident_pair(rem):
                continue
            deficit = [0] * n
            for u, v in rem:
                deficit[u] += 1
                deficit[v] += 1
            remaining = tour.edges - set(rem)
            for add in _fills(g, deficit, remaining | set(rem)):
                new = remaining | add
                if not is_hamiltonian(n, new):
                    continue
                sw = Swap(frozenset(rem), frozenset(add))
                d = sum((g.weight(*e) for e in add), Fraction(0)) - sum((g.weight(*e) for e in rem), Fraction(0))
                if not improving_only or d < 0:
                    out[sw] = d
    return sorted(out.items(), key=lambda sd: sd[0].sort_key())


def _fills(g: WeightedGraph, deficit: list[int], forbidden: set[Edge]):
    d = list(deficit)
    chosen: list[Edge] = []

    def go():
        v = next((x for x in range(len(d)) if d[x] > 0), -1)
        if v < 0:
            yield frozenset(chosen)
            return
        for u in g.neighbors(v):
            e = edge_key(u, v)
            if u <= v or d[u] == 0 or e in forbidden or e in chosen:
                continue
            d[u] -= 1
            d[v] -= 1
            chosen.append(e)
            yield from go()
            chosen.pop()
            d[u] += 1
            d[v] += 1

    yield from go()


# ---------------------------------------------------------------------------
# transition graphs and metrization


HAMILTON_LIMIT = 40


def hamiltonian_cycles(g: WeightedGraph, limit: int = 100000) -> list[Tour]:
    """All Hamiltonian cycles over the edges of ``g`` (backtracking from vertex 0)."""
    n = g.n
    if n > HAMILTON_LIMIT:
        raise TooLarge(f"Hamiltonian-cycle enumeration limited to {HAMILTON_LIMIT} vertices")
    if n < 3:
        return []
    nb = [sorted(g.neighbors(v)) for v in range(n)]
    path = [0]
    on = [False] * n
    on[0] = True
    out: list[Tour] = []

    def go():
        if len(out) > limit:
            raise TooLarge("too many Hamiltonian cycles")
        x = path[-1]
        if len(path) == n:
            if 0 in nb[x] and path[1] < x:
                out.append(Tour.from_order(path))
            return
        for y in nb[x]:
            if not on[y]:
                on[y] = True
                path.append(y)
                go()
                path.pop()
                on[y] = False

    go()
    return out


def tour_transition_graph(inst: TSPInstance, kspec: KSpec, oracle: bool = False) -> nx.DiGraph:
    """Nodes are canonical edge tuples of all finite tours; arcs are improving moves."""
    tg = nx.DiGraph()
    for t in hamiltonian_cycles(inst.graph):
        tg.add_node(t.canonical(), weight=inst.tour_weight(t))
        moves = naive_swaps(inst, t, kspec) if oracle else enumerate_improving_swaps(inst, t, kspec)
        for sw, d in moves:
            tg.add_edge(t.canonical(), apply_swap(t, sw).canonical(), delta=d)
    return tg


EXACT_METRIC_LIMIT = 256


def triangle_violation(inst: TSPInstance) -> Fraction:
    """Largest ``w(ac) - w(ab) - w(bc)`` over distinct triples (exact up to the size limit).

    Above :data:`EXACT_METRIC_LIMIT` vertices this returns the upper bound
    ``max w - 2 min w``, which is still a valid shift.
    """
    n = inst.graph.n
    ws = [w for _, _, w in inst.graph.edges()]
    if n > EXACT_METRIC_LIMIT:
        allw = ws + ([inst.big_m] if inst.graph.m < n * (n - 1) // 2 else [])
        return max(allw) - 2 * min(allw)
    mat, scale = inst.dense(dtype=object)
    best = None
    big = np.ones((n, n), dtype=bool)
    np.fill_diagonal(big, False)
    for b in range(n):
        viol = mat - mat[:, b][:, None] - mat[b, :][None, :]
        mask = big.copy()
        mask[b, :] = False
        mask[:, b] = False
        if mask.any():
            v = viol[mask].max()
            best = v if best is None or v > best else best
    return Fraction(0 if best is None else int(best), scale)


def metrize(inst: TSPInstance) -> TSPInstance:
    """Shift every weight (big-M included) by ``C = max(0, ceil(violation))``."""
    c = Fraction(max(0, math.ceil(triangle_violation(inst))))
    edges = [(u, v, w + c) for u, v, w in inst.graph.edges()]
    g = WeightedGraph(inst.graph.labels, edges)
    return TSPInstance(g, inst.big_m + c, inst.shift + c)


def dense_improving_two_swaps(mat: np.ndarray, order: Sequence[int]) -> set[tuple[int, int]]:
    """Position pairs ``(i, j)`` whose 2-opt move on the complete graph improves the tour."""
    o = np.asarray(order)
    n = len(o)
    nxt = np.roll(o, -1)
    cur = mat[o, nxt]
    d = mat[np.ix_(o, o)] + mat[np.ix_(nxt, nxt)] - cur[:, None] - cur[None, :]
    iu, ju = np.triu_indices(n, 2)
    keep = ~((iu == 0) & (ju == n - 1))
    iu, ju = iu[keep], ju[keep]
    hit = d[iu, ju] < 0
    return set(zip(iu[hit].tolist(), ju[hit].tolist()))
