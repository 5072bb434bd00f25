"""Gadget library: vertex, path, node and star gadgets with subtour catalogs.

Every gadget is a small weighted graph over local vertex names.  Portals are
``X<i>`` / ``Xb<i>`` (the two vertices of side i; a regular side has only
``X<i>``) and the PP-portals ``Z`` / ``Zb``.  Standard-subtour catalogs are
produced by exhaustive enumeration when the gadget is built, so a wrong edge
list shows up as a missing or duplicated catalog entry rather than silently.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .core import TooLarge, as_rational

ENUM_LIMIT = 16

INTERNAL, PV, PP = "internal", "pv", "pp"

VERTEX_KINDS = ("stick", "buoy", "xor")
STAR_KINDS = ("s1", "s2_ir", "s2_ii", "s3", "s4")
STAR4_LETTERS = "abcdefghijklmn"


class GadgetError(ValueError):
    pass


class NoSuchSubtour(KeyError):
    pass


class AmbiguousLabel(KeyError):
    pass


LocalEdge = tuple[int, int]


@dataclass(frozen=True)
class Subtour:
    """An edge subset of one gadget; edges are local index pairs ``(u, v)`` with u < v."""

    gadget: "Gadget" = field(compare=False, repr=False)
    edges: frozenset[LocalEdge]
    gadget_id: int = field(default=0)

    def degrees(self) -> tuple[int, ...]:
        d = [0] * len(self.gadget.names)
        for u, v in self.edges:
            d[u] += 1
            d[v] += 1
        return tuple(d)

    def weight(self) -> Fraction:
        w = self.gadget.weight_map
        return sum((w[e] for e in self.edges), Fraction(0))

    def named_edges(self) -> list[tuple[str, str]]:
        nm = self.gadget.names
        return sorted((nm[u], nm[v]) for u, v in self.edges)

    def paths(self) -> list[tuple[str, ...]]:
        """Components as name sequences, each oriented from its smaller endpoint."""
        nm = self.gadget.names
        adj: dict[int, list[int]] = {i: [] for i in range(len(nm))}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        seen: set[int] = set()
        out = []
        for s in sorted(range(len(nm)), key=lambda i: nm[i]):
            if s in seen or len(adj[s]) == 2:
                continue
            path = [s]
            seen.add(s)
            prev, cur = -1, s
            while True:
                nxt = [x for x in adj[cur] if x != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                path.append(cur)
                seen.add(cur)
            out.append(tuple(nm[i] for i in path))
        return sorted(out)


@dataclass(frozen=True, eq=False)
class Gadget:
    kind: str
    family: str
    names: tuple[str, ...]
    roles: tuple[str, ...]
    sides: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int, Fraction], ...]
    params: tuple[tuple[str, object], ...] = ()
    catalog: Mapping[object, frozenset[LocalEdge]] = field(default_factory=dict)

    @property
    def weight_map(self) -> dict[LocalEdge, Fraction]:
        return {(u, v): w for u, v, w in self.edges}

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise GadgetError(f"{self.kind} has no vertex {name!r}") from None

    @property
    def t(self) -> int:
        return len(self.sides)

    def side_regular(self, i: int) -> bool:
        """``i`` is 1-based."""
        return len(self.sides[i - 1]) == 1

    @property
    def pp_portals(self) -> tuple[int, ...]:
        return tuple(i for i, r in enumerate(self.roles) if r == PP)

    def subtour(self, edges: Iterable[LocalEdge]) -> Subtour:
        return Subtour(self, frozenset((min(u, v), max(u, v)) for u, v in edges))

    def labels(self) -> list:
        return list(self.catalog)

    def labels_of(self, sub: Subtour | frozenset) -> tuple:
        es = sub.edges if isinstance(sub, Subtour) else frozenset(sub)
        return tuple(lab for lab, e in self.catalog.items() if e == es)

    def param(self, key: str):
        return dict(self.params).get(key)


def _finish(kind: str, family: str, names: Sequence[str], roles: dict[str, str],
            sides: Sequence[Sequence[str]], weighted: Sequence[tuple[str, str, object]],
            params: dict | None = None) -> Gadget:
    idx = {x: i for i, x in enumerate(names)}
    edges = []
    seen = set()
    for a, b, w in weighted:
        u, v = sorted((idx[a], idx[b]))
        if u == v or (u, v) in seen:
            raise GadgetError(f"{kind}: bad edge {a}-{b}")
        seen.add((u, v))
        edges.append((u, v, as_rational(w)))
    edges.sort()
    g = Gadget(kind, family, tuple(names), tuple(roles.get(x, INTERNAL) for x in names),
               tuple(tuple(idx[x] for x in s) for s in sides), tuple(edges),
               tuple(sorted((params or {}).items())))
    object.__setattr__(g, "catalog", _build_catalog(g))
    return g


# ---------------------------------------------------------------------------
# enumeration


def enumerate_subtours(g: Gadget) -> list[Subtour]:
    """Every spanning set of vertex-disjoint paths whose endpoints are portals
    and in which each PP-portal has degree exactly one."""
    n = len(g.names)
    if n > ENUM_LIMIT:
        raise TooLarge(f"subtour enumeration limited to {ENUM_LIMIT} vertices")
    es = [(u, v) for u, v, _ in g.edges]
    cap = [1 if r == PP else 2 for r in g.roles]
    need = [2 if r == INTERNAL else (1 if r == PP else -1) for r in g.roles]
    remaining = [0] * n
    for u, v in es:
        remaining[u] += 1
        remaining[v] += 1
    deg = [0] * n
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    out: list[Subtour] = []
    chosen: list[LocalEdge] = []

    def feasible(x: int) -> bool:
        return need[x] < 0 or deg[x] + remaining[x] >= need[x]

    def go(i: int) -> None:
        if i == len(es):
            if all(need[x] < 0 or deg[x] == need[x] for x in range(n)):
                out.append(Subtour(g, frozenset(chosen)))
            return
        u, v = es[i]
        remaining[u] -= 1
        remaining[v] -= 1
        if deg[u] < cap[u] and deg[v] < cap[v]:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                deg[u] += 1
                deg[v] += 1
                chosen.append((u, v))
                go(i + 1)
                chosen.pop()
                deg[u] -= 1
                deg[v] -= 1
                parent[ru] = ru
        if feasible(u) and feasible(v):
            go(i + 1)
        remaining[u] += 1
        remaining[v] += 1

    go(0)
    return out


def side_value(g: Gadget, deg: Sequence[int], i: int) -> int | None:
    """The label coordinate of side ``i`` (1-based) implied by portal degrees."""
    side = g.sides[i - 1]
    if g.family == "path":
        a, b = deg[side[0]], deg[side[1]]
        return a if a == b and a in (0, 1) else None
    if len(side) == 1:
        return {0: 0, 2: 1}.get(deg[side[0]])
    return {(0, 1): 0, (1, 0): 1}.get((deg[side[0]], deg[side[1]]))


def label_vector(g: Gadget, sub: Subtour) -> tuple[int, ...] | None:
    deg = sub.degrees()
    vals = [side_value(g, deg, i) for i in range(1, g.t + 1)]
    return None if any(v is None for v in vals) else tuple(vals)  # type: ignore[return-value]


def _endpoints(sub: Subtour) -> list[frozenset[int]]:
    adj: dict[int, list[int]] = {}
    for u, v in sub.edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    out = []
    seen: set[int] = set()
    for s, nb in adj.items():
        if s in seen or len(nb) != 1:
            continue
        prev, cur = -1, s
        seen.add(s)
        while True:
            nxt = [x for x in adj[cur] if x != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            seen.add(cur)
        out.append(frozenset((s, cur)))
    return out


def _ladder_path(g: Gadget, first: str, second: str) -> frozenset[LocalEdge]:
    """Zig-zag Hamiltonian path of an XOR ladder starting on rail ``first``.

    Every rung vertex has degree two, so this path is the only candidate.
    """
    q = dict(g.params)["q"]
    seq = []
    rails = (first, second)
    for i in range(1, q + 1):
        a, b = rails if i % 2 else rails[::-1]
        seq += [f"{a}{i}", f"m{i}", f"{b}{i}"]
    idx = [g.index(x) for x in seq]
    return frozenset((min(u, v), max(u, v)) for u, v in zip(idx, idx[1:]))


def _build_catalog(g: Gadget) -> dict:
    if g.family == "vertex" and len(g.names) > ENUM_LIMIT:
        return {"odd": _ladder_path(g, "a", "b"), "even": _ladder_path(g, "b", "a")}
    subs = enumerate_subtours(g)
    cat: dict = {}
    if g.family == "vertex":
        n = len(g.names)
        for sub in subs:
            ends = _endpoints(sub)
            if len(ends) != 1 or len(sub.edges) != n - 1:
                continue
            for lab, side in (("odd", g.sides[0]), ("even", g.sides[1])):
                if ends[0] == frozenset(side):
                    if lab in cat:
                        raise GadgetError(f"{g.kind}: two {lab} subtours")
                    cat[lab] = sub.edges
        if set(cat) != {"odd", "even"}:
            raise GadgetError(f"{g.kind}: missing odd or even subtour")
        return cat
    if g.family == "node":
        if len(subs) != 1:
            raise GadgetError("node gadget must have exactly one subtour")
        return {"standard": subs[0].edges}
    found: dict[tuple[int, ...], list[frozenset]] = {}
    for sub in subs:
        vec = label_vector(g, sub)
        if vec is not None:
            found.setdefault(vec, []).append(sub.edges)
    if g.kind == "s4":
        return _star4_catalog(g, found)
    for vec in product((0, 1), repeat=g.t):
        got = found.get(vec, [])
        if len(got) != 1:
            raise GadgetError(f"{g.kind}: {len(got)} subtours with label {vec}")
        cat[vec] = got[0]
    return cat


# Paths of the 14 star-4 subtours, each read from Z.
STAR4_PATHS: dict[str, tuple[str, ...]] = {
    "a": ("Z", "Y", "X4", "X3", "X2", "Xb1"),
    "b": ("Z", "Y", "X4", "X3", "X2", "X1"),
    "c": ("Z", "Y", "X4", "X3", "X1"),
    "d": ("Z", "Y", "X4", "X3", "Xb1"),
    "e": ("Z", "Y", "X4", "Xb1"),
    "f": ("Z", "Y", "X4", "X1"),
    "g": ("Z", "Y", "X1"),
    "h": ("Z", "Y", "Xb1"),
    "i": ("Z", "Y", "X2", "Xb1"),
    "j": ("Z", "Y", "X2", "X1"),
    "k": ("Z", "Y", "X2", "X3", "X1"),
    "l": ("Z", "Y", "X2", "X3", "Xb1"),
    "m": ("Z", "Y", "X2", "X3", "X4", "Xb1"),
    "n": ("Z", "Y", "X2", "X3", "X4", "X1"),
}


def _star4_catalog(g: Gadget, found: dict) -> dict:
    every = {e for lst in found.values() for e in lst}
    cat = {}
    for letter in STAR4_LETTERS:
        p = [g.index(x) for x in STAR4_PATHS[letter]]
        es = frozenset((min(a, b), max(a, b)) for a, b in zip(p, p[1:]))
        if es not in every:
            raise GadgetError(f"star-4 subtour ({letter}) is not a labelled subtour")
        cat[letter] = es
    if len(every) != len(cat):
        raise GadgetError(f"star-4 has {len(every)} labelled subtours, expected {len(cat)}")
    return cat


# ---------------------------------------------------------------------------
# vertex gadgets


def make_vertex_gadget(kind: str, q: int | None = None) -> Gadget:
    """``stick``, ``buoy`` or ``xor`` (order ``q``)."""
    roles = {}
    if kind == "stick":
        names = ["a", "b", "c"]
        roles = {"a": PV, "c": PV}
        return _finish("stick", "vertex", names, roles, [("a", "c"), ("a", "c")],
                       [("a", "b", 0), ("b", "c", 0)])
    if kind == "buoy":
        names = ["X", "c", "b", "Xb1", "a", "Xb2"]
        roles = {"X": PV, "Xb1": PV, "Xb2": PV}
        edges = [("Xb1", "a", 0), ("a", "Xb2", 0), ("Xb2", "b", 0), ("b", "Xb1", 0),
                 ("b", "c", 0), ("c", "X", 0)]
        return _finish("buoy", "vertex", names, roles, [("X", "Xb1"), ("X", "Xb2")], edges)
    if kind == "xor":
        if not isinstance(q, int) or q < 1:
            raise GadgetError("xor gadget needs an integer order q >= 1")
        names = [f"a{i}" for i in range(1, q + 1)] + [f"b{i}" for i in range(1, q + 1)] + \
                [f"m{i}" for i in range(1, q + 1)]
        edges = [(f"a{i}", f"a{i + 1}", 0) for i in range(1, q)]
        edges += [(f"b{i}", f"b{i + 1}", 0) for i in range(1, q)]
        edges += [(f"a{i}", f"m{i}", 0) for i in range(1, q + 1)]
        edges += [(f"m{i}", f"b{i}", 0) for i in range(1, q + 1)]
        if q % 2 == 0:
            x1, x2, xb1, xb2 = "a1", "b1", f"a{q}", f"b{q}"
        else:
            x1, x2, xb1, xb2 = "a1", "b1", f"b{q}", f"a{q}"
        roles = {x: PV for x in (x1, x2, xb1, xb2)}
        return _finish(f"xor{q}", "vertex", names, roles, [(x1, xb1), (x2, xb2)], edges, {"q": q})
    raise GadgetError(f"unknown vertex gadget kind {kind!r}")


def vertex_gadget_for_k(k: int) -> Gadget:
    if k == 3:
        return make_vertex_gadget("stick")
    if k == 4:
        return make_vertex_gadget("buoy")
    if k >= 5:
        return make_vertex_gadget("xor", k - 2)
    raise GadgetError(f"no vertex gadget for k={k}")


# ---------------------------------------------------------------------------
# path gadgets


def _params(kind: str, sigma: Sequence, delta: Sequence, need: int) -> tuple[list[Fraction], list[Fraction]]:
    if len(sigma) != need or len(delta) != need:
        raise GadgetError(f"{kind} needs {need} agreeing and {need} disagreeing weights")
    return [as_rational(x) for x in sigma], [as_rational(x) for x in delta]


def make_path_gadget(t: int, sigma: Sequence = (), delta: Sequence = ()) -> Gadget:
    if t not in (1, 2, 3):
        raise GadgetError("path gadgets exist for t in {1, 2, 3}")
    s, d = _params(f"path-{t}", sigma, delta, t - 1)
    names = ["Z", "Zb", "Y", "Yb"]
    for i in range(1, t + 1):
        names += [f"X{i}", f"Xb{i}"]
    roles = {"Z": PP, "Zb": PP}
    roles.update({x: PV for x in names[4:]})
    sides = [(f"X{i}", f"Xb{i}") for i in range(1, t + 1)]
    base = [("Z", "Y"), ("Yb", "Zb"), ("Y", "X1"), ("Yb", "Xb1")]
    w: dict[tuple[str, str], Fraction] = {e: Fraction(0) for e in base}
    w[("Y", "Yb")] = Fraction(0)
    if t >= 2:
        w[("Xb1", "X2")] = s[0]
        w[("Y", "X2")] = d[0]
        w[("Yb", "Xb2")] = Fraction(0)
        w[("Y", "Yb")] = s[0]
        w[("Yb", "Xb1")] = d[0]
    if t == 3:
        w[("Xb1", "X2")] = s[0]
        w[("Xb1", "X3")] = d[0] + d[1]
        w[("Yb", "Xb1")] = d[0] + s[1]
        w[("Y", "X2")] = d[0]
        w[("Xb2", "X3")] = s[1]
        w[("Yb", "Xb2")] = d[1]
        w[("Y", "X3")] = s[0] + d[1]
        w[("Y", "Yb")] = s[0] + s[1]
        w[("Yb", "Xb3")] = Fraction(0)
    params = {"sigma": tuple(s), "delta": tuple(d)}
    return _finish(f"path{t}", "path", names, roles, sides, [(a, b, x) for (a, b), x in w.items()], params)


def path_weight_formula(sigma: Sequence, delta: Sequence, s: Sequence[int]) -> Fraction:
    total = Fraction(0)
    for i in range(len(s) - 1):
        total += as_rational(sigma[i]) if s[i] == s[i + 1] else as_rational(delta[i])
    return total


# ---------------------------------------------------------------------------
# node and star gadgets


def make_node_gadget(kind: str) -> Gadget:
    if kind == "regular":
        return _finish("node_regular", "node", ["X"], {"X": PV}, [("X",)], [])
    if kind == "irregular":
        return _finish("node_irregular", "node", ["X", "m", "Xb"], {"X": PV, "Xb": PV}, [("X", "Xb")],
                       [("X", "m", 0), ("m", "Xb", 0)])
    raise GadgetError(f"unknown node gadget kind {kind!r}")


def make_star_gadget(kind: str, sigma: Sequence = (), delta: Sequence = (), eps_tilde=None) -> Gadget:
    if kind not in STAR_KINDS:
        raise GadgetError(f"unknown star gadget kind {kind!r}")
    if (kind == "s4") != (eps_tilde is not None):
        raise GadgetError("eps_tilde is required for s4 and only for s4")
    if kind == "s1":
        _params(kind, sigma, delta, 0)
        names = ["Z", "Y", "X1", "Xb1"]
        return _finish(kind, "star", names, {"Z": PP, "X1": PV, "Xb1": PV}, [("X1", "Xb1")],
                       [("Z", "Y", 0), ("Y", "X1", 0), ("Y", "Xb1", 0)])
    if kind == "s2_ir":
        (s,), (d,) = _params(kind, sigma, delta, 1)
        names = ["Z", "Y", "X1", "Xb1", "X2"]
        edges = [("Z", "Y", 0), ("Y", "X2", 0), ("X1", "X2", s), ("X1", "Y", d),
                 ("Xb1", "X2", d), ("Xb1", "Y", s)]
        return _finish(kind, "star", names, {"Z": PP, "X1": PV, "Xb1": PV, "X2": PV},
                       [("X1", "Xb1"), ("X2",)], edges, {"sigma": (s,), "delta": (d,)})
    if kind == "s2_ii":
        (s,), (d,) = _params(kind, sigma, delta, 1)
        names = ["X1", "Xb1", "X2", "Xb2"]
        edges = [("X1", "X2", s), ("X1", "Xb2", d), ("Xb1", "X2", d), ("Xb1", "Xb2", s)]
        return _finish(kind, "star", names, {x: PV for x in names},
                       [("X1", "Xb1"), ("X2", "Xb2")], edges, {"sigma": (s,), "delta": (d,)})
    if kind == "s3":
        (s12, s13), (d12, d13) = _params(kind, sigma, delta, 2)
        names = ["X1", "X2", "Xb2", "X3", "Xb3"]
        edges = [("X1", "X2", s12), ("X1", "Xb2", d12), ("X1", "X3", s13), ("X1", "Xb3", d13),
                 ("X2", "X3", d12 + d13), ("X2", "Xb3", d12 + s13), ("Xb2", "X3", s12 + d13),
                 ("Xb2", "Xb3", s12 + s13)]
        return _finish(kind, "star", names, {x: PV for x in names},
                       [("X1",), ("X2", "Xb2"), ("X3", "Xb3")], edges,
                       {"sigma": (s12, s13), "delta": (d12, d13)})
    _params(kind, sigma, delta, 0)
    et = as_rational(eps_tilde)
    names = ["Z", "Y", "X1", "Xb1", "X2", "X3", "X4"]
    edges = [("Z", "Y", 0), ("Y", "X4", -et), ("X4", "X3", 0), ("X3", "X2", 0), ("X2", "Y", 0),
             ("Y", "Xb1", 0), ("Xb1", "X3", 0), ("X3", "X1", -1), ("X1", "X2", 0),
             ("X2", "Xb1", -1), ("Xb1", "X4", -1), ("X4", "X1", 0), ("X1", "Y", -1)]
    roles = {"Z": PP}
    roles.update({x: PV for x in names[2:]})
    return _finish(kind, "star", names, roles, [("X1", "Xb1"), ("X2",), ("X3",), ("X4",)], edges,
                   {"eps_tilde": et})


def star_weight_formula(sigma: Sequence, delta: Sequence, s: Sequence[int]) -> Fraction:
    total = Fraction(0)
    for i in range(1, len(s)):
        total += as_rational(sigma[i - 1]) if s[0] == s[i] else as_rational(delta[i - 1])
    return total


def star4_vector(letter: str) -> tuple[int, ...]:
    return STAR4_VECTORS[letter]


STAR4_VECTORS = {
    "a": (0, 1, 1, 1), "b": (1, 1, 1, 1), "c": (1, 0, 1, 1), "d": (0, 0, 1, 1),
    "e": (0, 0, 0, 1), "f": (1, 0, 0, 1), "g": (1, 0, 0, 0), "h": (0, 0, 0, 0),
    "i": (0, 1, 0, 0), "j": (1, 1, 0, 0), "k": (1, 1, 1, 0), "l": (0, 1, 1, 0),
    "m": (0, 1, 1, 1), "n": (1, 1, 1, 1),
}

# Pairs of star-4 subtours joined by a single change, following the state cycle.
STAR4_CHANGE_EDGES = (("b", "c"), ("c", "d"), ("d", "e"), ("e", "f"), ("f", "g"), ("g", "h"),
                      ("h", "i"), ("i", "j"), ("j", "k"), ("k", "l"), ("l", "m"), ("m", "n"),
                      ("a", "b"))
# Pairs related by a 2-swap inside the gadget that leaves every side unchanged.
STAR4_TWO_SWAP_EDGES = (("m", "a"), ("n", "b"))


# ---------------------------------------------------------------------------
# catalog access and comparisons


def standard_subtour(g: Gadget, label) -> Subtour:
    """Catalog entry for ``label``.

    For star-4 the label may be a letter or a vector; vectors shared by two
    subtours raise :class:`AmbiguousLabel`.
    """
    if g.kind == "s4" and not isinstance(label, str):
        vec = tuple(int(x) for x in label)
        hits = [k for k, v in STAR4_VECTORS.items() if v == vec]
        if not hits:
            raise NoSuchSubtour(f"star-4 has no subtour with label {vec}")
        if len(hits) > 1:
            raise AmbiguousLabel(f"label {vec} matches subtours {hits}")
        label = hits[0]
    if not isinstance(label, str):
        label = tuple(int(x) for x in label)
    try:
        return Subtour(g, g.catalog[label])
    except KeyError:
        raise NoSuchSubtour(f"{g.kind} has no standard subtour {label!r}") from None


def involved_edges(a: Subtour, b: Subtour) -> int:
    if a.gadget is not b.gadget:
        raise GadgetError("subtours belong to different gadgets")
    return len(a.edges ^ b.edges)


@dataclass(frozen=True)
class Change:
    kind: str  # "two_change" | "two_five_change" | "other"
    side: int | None = None

    def __str__(self) -> str:
        return self.kind if self.side is None else f"{self.kind}({self.side})"


def classify_change(g: Gadget, a: Subtour, b: Subtour) -> Change:
    if a.gadget is not g or b.gadget is not g:
        raise GadgetError("subtours belong to a different gadget")
    diff = a.edges ^ b.edges
    for i, side in enumerate(g.sides, 1):
        x = side[0]
        if len(side) == 2 and len(diff) == 2:
            xb = side[1]
            (u1, v1), (u2, v2) = sorted(diff)
            other1 = {u1, v1} - {x, xb}
            other2 = {u2, v2} - {x, xb}
            ends = ({u1, v1} | {u2, v2}) - (other1 | other2)
            if ends == {x, xb} and len(other1) == 1 and other1 == other2:
                return Change("two_change", i)
        if len(side) == 1 and len(diff) == 3:
            verts = set()
            for u, v in diff:
                verts.update((u, v))
            if len(verts) != 3 or x not in verts:
                continue
            at_x = frozenset(e for e in diff if x in e)
            if len(at_x) == 2 and (at_x <= a.edges or at_x <= b.edges):
                return Change("two_five_change", i)
    return Change("other")


def gadget_to_json(g: Gadget) -> dict:
    def enc(x):
        if isinstance(x, Fraction):
            return str(x)
        if isinstance(x, tuple):
            return [enc(y) for y in x]
        return x

    return {
        "kind": g.kind,
        "family": g.family,
        "vertices": [{"name": n, "role": r} for n, r in zip(g.names, g.roles)],
        "sides": [[g.names[i] for i in s] for s in g.sides],
        "edges": [[g.names[u], g.names[v], str(w)] for u, v, w in g.edges],
        "params": {k: enc(v) for k, v in g.params},
        "catalog": {
            (lab if isinstance(lab, str) else "".join(map(str, lab))): Subtour(g, es).paths()
            for lab, es in g.catalog.items()
        },
    }


def dump_catalogs(gadgets: Iterable[Gadget]) -> str:
    return json.dumps([gadget_to_json(g) for g in gadgets], indent=2)


def reference_gadgets() -> list[Gadget]:
    """One instance of every kind with symbolic-looking distinct parameters."""
    s = [Fraction(3), Fraction(5)]
    d = [Fraction(7), Fraction(11)]
    out = [make_vertex_gadget("stick"), make_vertex_gadget("buoy")]
    out += [make_vertex_gadget("xor", q) for q in (3, 4, 5)]
    out += [make_path_gadget(1), make_path_gadget(2, s[:1], d[:1]), make_path_gadget(3, s, d)]
    out += [make_node_gadget("regular"), make_node_gadget("irregular")]
    out += [make_star_gadget("s1"), make_star_gadget("s2_ir", s[:1], d[:1]),
            make_star_gadget("s2_ii", s[:1], d[:1]), make_star_gadget("s3", s, d),
            make_star_gadget("s4", eps_tilde=Fraction(1, 16))]
    return out
