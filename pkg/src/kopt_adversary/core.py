"""Exact weighted graphs, cuts, tours and swaps.

All weights are :class:`fractions.Fraction` values.  Every type here is an
immutable value; operations return new objects.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

Rational = Fraction
Edge = tuple[int, int]
INFINITY = math.inf


class GraphError(ValueError):
    pass


class DimensionError(ValueError):
    pass


class NotATour(ValueError):
    pass


class PreconditionViolation(ValueError):
    pass


class TooLarge(ValueError):
    pass


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point weights are not accepted; pass a Fraction or int")
    return Fraction(x)


class WeightedGraph:
    """Simple undirected graph with labelled vertices and rational edge weights."""

    __slots__ = ("_labels", "_index", "_w", "_adj")

    def __init__(self, labels: Sequence[str], edges: Mapping[Edge, object] | Iterable[tuple[int, int, object]]):
        self._labels = tuple(str(x) for x in labels)
        if len(set(self._labels)) != len(self._labels):
            raise GraphError("vertex labels must be distinct")
        self._index = {lab: i for i, lab in enumerate(self._labels)}
        n = len(self._labels)
        items = edges.items() if isinstance(edges, Mapping) else (((u, v), w) for u, v, w in edges)
        w: dict[Edge, Fraction] = {}
        adj: list[list[int]] = [[] for _ in range(n)]
        for (u, v), wt in items:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"loop at vertex {self._labels[u]}")
            key = edge_key(u, v)
            if key in w:
                raise GraphError(f"parallel edge {self._labels[u]}-{self._labels[v]}")
            w[key] = as_rational(wt)
            adj[u].append(v)
            adj[v].append(u)
        self._w = w
        self._adj = tuple(tuple(sorted(a)) for a in adj)

    @classmethod
    def from_labelled(cls, labels: Sequence[str], edges: Iterable[tuple[str, str, object]]) -> "WeightedGraph":
        idx = {lab: i for i, lab in enumerate(labels)}
        return cls(labels, [(idx[a], idx[b], w) for a, b, w in edges])

    @property
    def n(self) -> int:
        return len(self._labels)

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    def index(self, label: str) -> int:
        return self._index[label]

    def label(self, v: int) -> str:
        return self._labels[v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self._w

    def weight(self, u: int, v: int) -> Fraction:
        return self._w[edge_key(u, v)]

    def edges(self) -> Iterator[tuple[int, int, Fraction]]:
        for (u, v), w in sorted(self._w.items()):
            yield u, v, w

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self._w)

    @property
    def m(self) -> int:
        return len(self._w)

    def weights(self) -> dict[Edge, Fraction]:
        return dict(self._w)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, WeightedGraph) and self._labels == other._labels and self._w == other._w

    def __hash__(self) -> int:
        return hash((self._labels, frozenset(self._w.items())))

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Cut:
    """Bipartition; ``assignment[v]`` is True when v lies in the 1-set."""

    assignment: tuple[bool, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "assignment", tuple(bool(x) for x in self.assignment))

    def __len__(self) -> int:
        return len(self.assignment)

    def __getitem__(self, v: int) -> bool:
        return self.assignment[v]

    def ones(self) -> frozenset[int]:
        return frozenset(i for i, x in enumerate(self.assignment) if x)

    def to_int(self) -> int:
        return sum(1 << i for i, x in enumerate(self.assignment) if x)

    @classmethod
    def from_int(cls, code: int, n: int) -> "Cut":
        return cls(tuple(bool((code >> i) & 1) for i in range(n)))

    @classmethod
    def from_ones(cls, ones: Iterable[int], n: int) -> "Cut":
        s = set(ones)
        return cls(tuple(i in s for i in range(n)))


def _check_cut(graph: WeightedGraph, cut: Cut) -> None:
    if len(cut) != graph.n:
        raise DimensionError(f"cut has {len(cut)} entries, graph has {graph.n} vertices")


def _check_vertex(graph: WeightedGraph, v: int) -> None:
    if not 0 <= v < graph.n:
        raise IndexError(f"vertex {v} out of range")


def cut_value(graph: WeightedGraph, cut: Cut) -> Fraction:
    _check_cut(graph, cut)
    a = cut.assignment
    return sum((w for u, v, w in graph.edges() if a[u] != a[v]), Fraction(0))


def flip_gain(graph: WeightedGraph, cut: Cut, v: int) -> Fraction:
    _check_cut(graph, cut)
    _check_vertex(graph, v)
    a = cut.assignment
    g = Fraction(0)
    for u in graph.neighbors(v):
        w = graph.weight(u, v)
        g += w if a[u] == a[v] else -w
    return g


def apply_flip(cut: Cut, v: int) -> Cut:
    if not 0 <= v < len(cut):
        raise IndexError(f"vertex {v} out of range")
    a = list(cut.assignment)
    a[v] = not a[v]
    return Cut(tuple(a))


class Tour:
    """A Hamiltonian cycle stored as an edge set plus a traversal order."""

    __slots__ = ("_n", "_edges", "_order", "_pos")

    def __init__(self, n: int, edges: Iterable[Edge]):
        es = frozenset(edge_key(u, v) for u, v in edges)
        self._n = n
        self._edges = es
        self._order = _hamiltonian_order(n, es)
        self._pos = None

    @classmethod
    def from_order(cls, order: Sequence[int]) -> "Tour":
        k = len(order)
        return cls(k, [(order[i], order[(i + 1) % k]) for i in range(k)])

    @property
    def n(self) -> int:
        return self._n

    @property
    def edges(self) -> frozenset[Edge]:
        return self._edges

    @property
    def order(self) -> tuple[int, ...]:
        return self._order

    def position(self) -> list[int]:
        if self._pos is None:
            pos = [0] * self._n
            for i, v in enumerate(self._order):
                pos[v] = i
            self._pos = pos
        return self._pos

    def successor(self, v: int) -> int:
        i = self.position()[v]
        return self._order[(i + 1) % self._n]

    def predecessor(self, v: int) -> int:
        i = self.position()[v]
        return self._order[i - 1]

    def canonical(self) -> tuple[Edge, ...]:
        return tuple(sorted(self._edges))

    def __contains__(self, e: Edge) -> bool:
        return edge_key(*e) in self._edges

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Tour) and self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash(self._edges)

    def __repr__(self) -> str:
        return f"Tour(n={self._n})"


def _hamiltonian_order(n: int, edges: frozenset[Edge]) -> tuple[int, ...]:
    if n < 3:
        raise NotATour("a tour needs at least 3 vertices")
    if len(edges) != n:
        raise NotATour(f"{len(edges)} edges for {n} vertices")
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise NotATour(f"bad edge ({u}, {v})")
        adj[u].append(v)
        adj[v].append(u)
    for v, a in enumerate(adj):
        if len(a) != 2:
            raise NotATour(f"vertex {v} has degree {len(a)}")
    order = [0]
    prev, cur = 0, min(adj[0])
    while cur != 0:
        order.append(cur)
        a, b = adj[cur]
        prev, cur = cur, (b if a == prev else a)
        if len(order) > n:
            raise NotATour("walk does not close")
    if len(order) != n:
        raise NotATour(f"edge set splits into several cycles (first has {len(order)} of {n} vertices)")
    return tuple(order)


def is_hamiltonian(n: int, edges: Iterable[Edge]) -> bool:
    try:
        _hamiltonian_order(n, frozenset(edge_key(u, v) for u, v in edges))
    except NotATour:
        return False
    return True


@dataclass(frozen=True)
class Swap:
    removed: frozenset[Edge]
    added: frozenset[Edge]

    def __post_init__(self) -> None:
        r = frozenset(edge_key(u, v) for u, v in self.removed)
        a = frozenset(edge_key(u, v) for u, v in self.added)
        if len(r) != len(a):
            raise ValueError("swap must remove and add the same number of edges")
        if r & a:
            raise ValueError("removed and added edge sets overlap")
        object.__setattr__(self, "removed", r)
        object.__setattr__(self, "added", a)

    @property
    def size(self) -> int:
        return len(self.removed)

    def sort_key(self) -> tuple:
        return (len(self.removed), tuple(sorted(self.removed)), tuple(sorted(self.added)))

    @classmethod
    def between(cls, a: Tour, b: Tour) -> "Swap":
        return cls(a.edges - b.edges, b.edges - a.edges)


EMPTY_SWAP = Swap(frozenset(), frozenset())


def tour_weight(graph: WeightedGraph, tour: Tour, big_m: Fraction) -> Fraction:
    total = Fraction(0)
    for u, v in tour.edges:
        total += graph.weight(u, v) if graph.has_edge(u, v) else big_m
    return total


def apply_swap(tour: Tour, swap: Swap) -> Tour:
    if not swap.removed <= tour.edges:
        raise PreconditionViolation("removed edges are not all in the tour")
    if swap.added & tour.edges:
        raise PreconditionViolation("added edges already lie in the tour")
    return Tour(tour.n, (tour.edges - swap.removed) | swap.added)


def girth(graph: WeightedGraph) -> float | int:
    """Length of a shortest cycle, or ``math.inf`` for forests."""
    best = INFINITY
    n = graph.n
    for s in range(n):
        dist = [-1] * n
        parent = [-1] * n
        dist[s] = 0
        q = deque([s])
        while q:
            x = q.popleft()
            if 2 * dist[x] + 1 >= best:
                break
            for y in graph.neighbors(x):
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    q.append(y)
                elif parent[x] != y:
                    best = min(best, dist[x] + dist[y] + 1)
    return best


@dataclass(frozen=True)
class PathCover:
    """Paths of at most two edges; listed order fixes each path's orientation."""

    paths: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "paths", tuple(tuple(p) for p in self.paths))

    def __iter__(self):
        return iter(self.paths)

    def __len__(self) -> int:
        return len(self.paths)


def validate_cover(graph: WeightedGraph, cover: PathCover) -> list[str]:
    problems: list[str] = []
    seen: dict[Edge, int] = {}
    count = [0] * graph.n
    for idx, path in enumerate(cover):
        if not 1 <= len(path) <= 3:
            problems.append(f"path {idx} has {max(len(path) - 1, -1)} edges")
            continue
        if len(set(path)) != len(path):
            problems.append(f"path {idx} repeats a vertex")
        for v in path:
            if not 0 <= v < graph.n:
                problems.append(f"path {idx} uses unknown vertex {v}")
            else:
                count[v] += 1
        for a, b in zip(path, path[1:]):
            if not (0 <= a < graph.n and 0 <= b < graph.n) or not graph.has_edge(a, b):
                problems.append(f"path {idx} uses non-edge ({a}, {b})")
                continue
            key = edge_key(a, b)
            if key in seen:
                problems.append(f"edge {graph.label(a)}-{graph.label(b)} in paths {seen[key]} and {idx}")
            seen[key] = idx
    for u, v, _ in graph.edges():
        if (u, v) not in seen:
            problems.append(f"edge {graph.label(u)}-{graph.label(v)} is uncovered")
    for v, c in enumerate(count):
        if c != 2:
            problems.append(f"vertex {graph.label(v)} lies in {c} paths")
    return problems


def find_path_cover(graph: WeightedGraph, limit: int = 12) -> PathCover | None:
    """Backtracking search for a 2-path 2-cover of a small graph."""
    if graph.n > limit:
        raise TooLarge(f"cover search limited to {limit} vertices")
    edges = [(u, v) for u, v, _ in graph.edges()]
    count = [0] * graph.n
    used: set[Edge] = set()
    paths: list[tuple[int, ...]] = []

    def candidates(e: Edge):
        u, v = e
        yield (u, v)
        for a, b in ((u, v), (v, u)):
            for c in graph.neighbors(b):
                if c != a and edge_key(b, c) not in used:
                    yield (a, b, c)

    def solve(i: int) -> bool:
        while i < len(edges) and edges[i] in used:
            i += 1
        if i == len(edges):
            need = []
            for v, c in enumerate(count):
                if c > 2:
                    return False
                need.extend([v] * (2 - c))
            paths.extend((v,) for v in need)
            return True
        for p in candidates(edges[i]):
            if any(count[x] >= 2 for x in p):
                continue
            es = [edge_key(a, b) for a, b in zip(p, p[1:])]
            if any(e in used for e in es):
                continue
            for x in p:
                count[x] += 1
            used.update(es)
            paths.append(p)
            if solve(i + 1):
                return True
            paths.pop()
            used.difference_update(es)
            for x in p:
                count[x] -= 1
        return False

    return PathCover(tuple(paths)) if solve(0) else None
