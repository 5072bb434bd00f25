"""Max-Cut to TSP construction for k = 3, 4 and k >= 5.

Each H-vertex gets a vertex gadget (stick, buoy or XOR(k-2)); each path of a
2-path 2-cover gets a path gadget whose sides are glued onto the vertex
gadgets of the path's vertices.  Path gadgets are chained in cover order
through their PP-portals.  Tours of the result that are standard in every
gadget correspond one-to-one to cuts of H.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import Hashable, Iterable, Sequence

from .core import (Cut, Edge, PathCover, PreconditionViolation, Tour, WeightedGraph, edge_key, girth,
                   tour_weight, validate_cover)
from .gadgets import Gadget, make_path_gadget, standard_subtour, vertex_gadget_for_k


class GirthTooSmall(PreconditionViolation):
    pass


class CoverInvalid(PreconditionViolation):
    pass


class NotSimple(ValueError):
    pass


class NotStandard(ValueError):
    """Raised (or returned by the classifiers) with the offending gadget id."""

    def __init__(self, message: str, gadget: int | None = None):
        super().__init__(message)
        self.gadget = gadget


# ---------------------------------------------------------------------------
# assembly by portal identification


@dataclass(frozen=True)
class PlacedGadget:
    gid: int
    gadget: Gadget
    owner: tuple
    vmap: tuple[int, ...]

    @cached_property
    def edge_map(self) -> dict[Edge, tuple[int, int]]:
        """Global edge -> local edge."""
        return {edge_key(self.vmap[u], self.vmap[v]): (u, v) for u, v, _ in self.gadget.edges}

    def restrict(self, tour_edges: frozenset[Edge]) -> frozenset[tuple[int, int]]:
        return frozenset(loc for e, loc in self.edge_map.items() if e in tour_edges)

    def at(self, name: str) -> int:
        return self.vmap[self.gadget.index(name)]


class Assembler:
    """Collects gadgets, merges identified vertices and emits one simple graph."""

    def __init__(self) -> None:
        self._gadgets: list[tuple[Gadget, tuple, str]] = []
        self._parent: dict[tuple[int, int], tuple[int, int]] = {}

    def add(self, gadget: Gadget, owner: tuple, prefix: str) -> int:
        gid = len(self._gadgets)
        self._gadgets.append((gadget, owner, prefix))
        for i in range(len(gadget.names)):
            self._parent[(gid, i)] = (gid, i)
        return gid

    def _find(self, x):
        while self._parent[x] != x:
            self._parent[x] = self._parent[self._parent[x]]
            x = self._parent[x]
        return x

    def identify(self, a: tuple[int, str], b: tuple[int, str]) -> None:
        ka = (a[0], self._gadgets[a[0]][0].index(a[1]))
        kb = (b[0], self._gadgets[b[0]][0].index(b[1]))
        ra, rb = self._find(ka), self._find(kb)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self._parent[rb] = ra

    def build(self) -> tuple[WeightedGraph, list[PlacedGadget], dict[Edge, int]]:
        index: dict[tuple[int, int], int] = {}
        labels: list[str] = []
        for gid, (g, _, prefix) in enumerate(self._gadgets):
            for i, name in enumerate(g.names):
                r = self._find((gid, i))
                if r not in index:
                    index[r] = len(labels)
                    rg, ri = r
                    labels.append(f"{self._gadgets[rg][2]}/{self._gadgets[rg][0].names[ri]}")
        placed = []
        weights: dict[Edge, Fraction] = {}
        owner: dict[Edge, int] = {}
        for gid, (g, own, _) in enumerate(self._gadgets):
            vmap = tuple(index[self._find((gid, i))] for i in range(len(g.names)))
            for u, v, w in g.edges:
                a, b = vmap[u], vmap[v]
                if a == b:
                    raise NotSimple(f"gadget {gid} edge {g.names[u]}-{g.names[v]} became a loop")
                e = edge_key(a, b)
                if e in weights:
                    raise NotSimple(f"edge {labels[a]}-{labels[b]} created by gadgets {owner[e]} and {gid}")
                weights[e] = w
                owner[e] = gid
            placed.append(PlacedGadget(gid, g, own, vmap))
        return WeightedGraph(labels, weights), placed, owner


# ---------------------------------------------------------------------------
# the construction


@dataclass(frozen=True)
class StandardTourView:
    tour: Tour
    labels: dict[int, Hashable]

    ok = True


@dataclass(frozen=True, eq=False)
class ReductionArtifacts:
    h: WeightedGraph
    k: int
    cover: PathCover
    graph: WeightedGraph
    big_m: Fraction
    gadgets: tuple[PlacedGadget, ...]
    edge_owner: dict[Edge, int]
    side_labels: tuple[tuple[int, ...], ...]
    vertex_gadget: tuple[int, ...]
    path_gadget: tuple[int, ...]
    attachments: tuple[tuple[tuple[int, int], ...], ...]
    cycle_order: tuple[int, ...] = field(default=())

    @property
    def instance(self):
        from .kopt import TSPInstance
        return TSPInstance(self.graph, self.big_m)

    def weight(self, tour: Tour) -> Fraction:
        return tour_weight(self.graph, tour, self.big_m)


def sigma_delta(labels: Sequence[int], weights: Sequence[Fraction], centre: bool):
    sig, dlt = [], []
    for i, w in enumerate(weights):
        a, b = (labels[0], labels[i + 1]) if centre else (labels[i], labels[i + 1])
        if a == b:
            sig.append(Fraction(0))
            dlt.append(-w)
        else:
            sig.append(-w)
            dlt.append(Fraction(0))
    return sig, dlt


def big_m_for(graph: WeightedGraph) -> Fraction:
    return 1 + sum((abs(w) for _, _, w in graph.edges()), Fraction(0))


def build_reduction(h: WeightedGraph, cover: PathCover, k: int, check_girth: bool = True) -> ReductionArtifacts:
    if not isinstance(k, int) or k < 3:
        raise PreconditionViolation("k must be an integer >= 3")
    problems = validate_cover(h, cover)
    if problems:
        raise CoverInvalid("; ".join(problems[:5]))
    if check_girth and k in (3, 4):
        g = girth(h)
        if g <= 4 * k:
            raise GirthTooSmall(f"girth {g} must exceed {4 * k} for k={k}")

    asm = Assembler()
    vgad = vertex_gadget_for_k(k)
    vertex_gid = [asm.add(vgad, ("vertex", v), h.label(v)) for v in range(h.n)]

    seen = [0] * h.n
    side_labels = []
    attach: list[list[tuple[int, int]]] = [[] for _ in range(h.n)]
    path_gid = []
    for alpha, path in enumerate(cover):
        lab = []
        for i, v in enumerate(path):
            seen[v] += 1
            lab.append(seen[v])
            attach[v].append((alpha, i))
        ws = [h.weight(a, b) for a, b in zip(path, path[1:])]
        sig, dlt = sigma_delta(lab, ws, centre=False)
        gid = asm.add(make_path_gadget(len(path), sig, dlt), ("path", alpha), f"P{alpha}")
        path_gid.append(gid)
        side_labels.append(tuple(lab))
        for i, v in enumerate(path):
            vx = vgad.sides[lab[i] - 1]
            asm.identify((gid, f"X{i + 1}"), (vertex_gid[v], vgad.names[vx[0]]))
            asm.identify((gid, f"Xb{i + 1}"), (vertex_gid[v], vgad.names[vx[1]]))
    for alpha in range(len(path_gid)):
        nxt = path_gid[(alpha + 1) % len(path_gid)]
        asm.identify((path_gid[alpha], "Z"), (nxt, "Zb"))

    graph, placed, owner = asm.build()
    for v, att in enumerate(attach):
        if len({a for a, _ in att}) != 2:
            raise CoverInvalid(f"vertex {h.label(v)} is not attached to two distinct path gadgets")
    return ReductionArtifacts(h, k, cover, graph, big_m_for(graph), tuple(placed), owner,
                              tuple(side_labels), tuple(vertex_gid), tuple(path_gid),
                              tuple(tuple(a) for a in attach), tuple(path_gid))


# ---------------------------------------------------------------------------
# cuts <-> standard tours


def path_label_for_cut(red: ReductionArtifacts, alpha: int, cut: Cut) -> tuple[int, ...]:
    path = red.cover.paths[alpha]
    lab = red.side_labels[alpha]
    return tuple((lab[i] % 2) if cut[v] else 1 - lab[i] % 2 for i, v in enumerate(path))


def standard_tour_from_cut(red: ReductionArtifacts, cut: Cut) -> StandardTourView:
    if len(cut) != red.h.n:
        raise PreconditionViolation("cut size does not match H")
    edges: set[Edge] = set()
    labels: dict[int, Hashable] = {}
    for alpha, gid in enumerate(red.path_gadget):
        pg = red.gadgets[gid]
        s = path_label_for_cut(red, alpha, cut)
        labels[gid] = s
        edges.update(_globalize(pg, standard_subtour(pg.gadget, s).edges))
    for v, gid in enumerate(red.vertex_gadget):
        pg = red.gadgets[gid]
        lab = "odd" if cut[v] else "even"
        labels[gid] = lab
        edges.update(_globalize(pg, standard_subtour(pg.gadget, lab).edges))
    return StandardTourView(Tour(red.graph.n, edges), labels)


def _globalize(pg: PlacedGadget, local: Iterable[tuple[int, int]]) -> list[Edge]:
    return [edge_key(pg.vmap[u], pg.vmap[v]) for u, v in local]


def is_standard(red: ReductionArtifacts, tour: Tour) -> StandardTourView | NotStandard:
    es = tour.edges
    for e in es:
        if e not in red.edge_owner:
            a, b = e
            return NotStandard(f"tour uses non-construction edge {red.graph.label(a)}-{red.graph.label(b)}")
    labels: dict[int, Hashable] = {}
    for gid in red.path_gadget:
        pg = red.gadgets[gid]
        hits = pg.gadget.labels_of(pg.restrict(es))
        if not hits:
            return NotStandard(f"path gadget {pg.owner[1]} has a non-standard subtour", gid)
        labels[gid] = hits[0]
    for v, gid in enumerate(red.vertex_gadget):
        pg = red.gadgets[gid]
        hits = pg.gadget.labels_of(pg.restrict(es))
        if not hits:
            return NotStandard(f"vertex gadget of {red.h.label(v)} has a non-standard subtour", gid)
        implied = set()
        for alpha, i in red.attachments[v]:
            s = labels[red.path_gadget[alpha]][i]
            implied.add("odd" if red.side_labels[alpha][i] % 2 == s else "even")
        if len(implied) != 1 or next(iter(implied)) not in hits:
            return NotStandard(f"vertex gadget of {red.h.label(v)} disagrees with its path gadgets", gid)
        labels[gid] = next(iter(implied))
    return StandardTourView(tour, labels)


def cut_from_standard_tour(red: ReductionArtifacts, tour: Tour) -> Cut:
    view = is_standard(red, tour)
    if isinstance(view, NotStandard):
        raise view
    return Cut(tuple(view.labels[gid] == "odd" for gid in red.vertex_gadget))


def single_vertex_h(label: str = "v") -> tuple[WeightedGraph, PathCover]:
    """One vertex, covered by two 0-paths."""
    return WeightedGraph([label], []), PathCover(((0,), (0,)))


def single_edge_h(w=1) -> tuple[WeightedGraph, PathCover]:
    """Two vertices joined by one edge, covered by the edge and two 0-paths."""
    return WeightedGraph(["a", "b"], [(0, 1, w)]), PathCover(((0, 1), (0,), (1,)))


def tsplib_scale(graph: WeightedGraph, big_m: Fraction) -> int:
    scale = 1
    for _, _, w in graph.edges():
        scale = scale * w.denominator // math.gcd(scale, w.denominator)
    return scale * big_m.denominator // math.gcd(scale, big_m.denominator)
