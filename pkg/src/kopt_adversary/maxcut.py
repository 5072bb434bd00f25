"""Flip local search for weighted Max-Cut."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import networkx as nx

from . import kernels
from .core import Cut, TooLarge, WeightedGraph, cut_value, flip_gain
from .pivots import PivotRule, XorShift64, seed_state

TRANSITION_LIMIT = 20
TRACE_COLUMNS = ("step", "move_kind", "detail", "delta_num", "delta_den", "objective_num", "objective_den")


def improving_flips(graph: WeightedGraph, cut: Cut) -> list[tuple[int, Fraction]]:
    out = []
    for v in range(graph.n):
        g = flip_gain(graph, cut, v)
        if g > 0:
            out.append((v, g))
    return out


@dataclass(frozen=True)
class FlipStep:
    vertex: int
    gain: Fraction
    value: Fraction


@dataclass
class FlipTrace:
    graph: WeightedGraph
    initial: Cut
    initial_value: Fraction
    steps: list[FlipStep] = field(default_factory=list)
    termination: str = "local-optimum"

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def vertices(self) -> list[int]:
        return [s.vertex for s in self.steps]

    @property
    def final_value(self) -> Fraction:
        return self.steps[-1].value if self.steps else self.initial_value

    def final_cut(self) -> Cut:
        a = list(self.initial.assignment)
        for s in self.steps:
            a[s.vertex] = not a[s.vertex]
        return Cut(tuple(a))

    def cuts(self) -> Iterable[Cut]:
        a = list(self.initial.assignment)
        yield Cut(tuple(a))
        for s in self.steps:
            a[s.vertex] = not a[s.vertex]
            yield Cut(tuple(a))

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(TRACE_COLUMNS)
        for i, s in enumerate(self.steps, 1):
            wr.writerow([i, "flip", self.graph.label(s.vertex), s.gain.numerator, s.gain.denominator,
                         s.value.numerator, s.value.denominator])
        return buf.getvalue()


def run_flip(graph: WeightedGraph, cut: Cut, pivot: PivotRule = PivotRule(), step_limit: int | None = None,
             impl=None) -> FlipTrace:
    """Apply improving flips chosen by ``pivot`` until a local optimum or the limit."""
    if step_limit is not None and step_limit < 0:
        raise ValueError("step_limit must be non-negative")
    if len(cut) != graph.n:
        raise ValueError("cut size does not match the graph")
    ig = kernels.IntGraph.build(graph.n, list(graph.edges()))
    limit = (1 << 62) if step_limit is None else step_limit
    assign = [int(x) for x in cut.assignment]
    verts, gains, _ = kernels.flip_run(ig, assign, pivot.code, seed_state(pivot.seed), limit, impl=impl)
    value = cut_value(graph, cut)
    trace = FlipTrace(graph, cut, value)
    for v, g in zip(verts, gains):
        gf = Fraction(g, ig.scale)
        value += gf
        trace.steps.append(FlipStep(v, gf, value))
    if step_limit is not None and len(verts) == step_limit and improving_flips(graph, trace.final_cut()):
        trace.termination = "step-limit"
    return trace


def run_flip_reference(graph: WeightedGraph, cut: Cut, pivot: PivotRule = PivotRule(),
                       step_limit: int | None = None) -> FlipTrace:
    """Slow exact-arithmetic version recomputing every gain at each step."""
    rng = XorShift64(pivot.seed)
    trace = FlipTrace(graph, cut, cut_value(graph, cut))
    cur = cut
    value = trace.initial_value
    while step_limit is None or len(trace.steps) < step_limit:
        cand = improving_flips(graph, cur)
        if not cand:
            return trace
        if pivot.kind == "first":
            v, g = cand[0]
        elif pivot.kind == "steepest":
            v, g = max(cand, key=lambda vg: (vg[1], -vg[0]))
        else:
            v, g = cand[rng.index(len(cand))]
        a = list(cur.assignment)
        a[v] = not a[v]
        cur = Cut(tuple(a))
        value += g
        trace.steps.append(FlipStep(v, g, value))
    if improving_flips(graph, cur):
        trace.termination = "step-limit"
    return trace


def cut_transition_graph(graph: WeightedGraph) -> nx.DiGraph:
    """Nodes are cut bit-codes (bit v set iff v is in the 1-set)."""
    n = graph.n
    if n > TRANSITION_LIMIT:
        raise TooLarge(f"transition graph limited to {TRANSITION_LIMIT} vertices")
    g = nx.DiGraph()
    g.add_nodes_from(range(1 << n))
    edges = list(graph.edges())
    for code in range(1 << n):
        gain = [Fraction(0)] * n
        for u, v, w in edges:
            same = ((code >> u) & 1) == ((code >> v) & 1)
            d = w if same else -w
            gain[u] += d
            gain[v] += d
        for v in range(n):
            if gain[v] > 0:
                g.add_edge(code, code ^ (1 << v), gain=gain[v])
    return g


def project_trace(trace: FlipTrace | Sequence[int], excluded: Iterable[int]) -> list[int]:
    ex = set(excluded)
    seq = trace.vertices if isinstance(trace, FlipTrace) else list(trace)
    return [v for v in seq if v not in ex]
