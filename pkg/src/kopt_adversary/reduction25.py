"""Max-Cut to TSP construction for 2.5-opt over the subdivided layered family.

Every H-vertex gets a node gadget (a single vertex when regular, a 2-path
when irregular).  H is split into stars; each star sequence gets a star
gadget whose sides are glued onto the node gadgets of its vertices.  A
standard tour is mapped to a cut by reading, for each vertex, the side value
in the star where that vertex carries label 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable

from .core import Cut, Edge, PreconditionViolation, Tour, WeightedGraph, edge_key, tour_weight
from .gadgets import (STAR4_VECTORS, make_node_gadget, make_star_gadget, standard_subtour)
from .ms_family import (DOWN_J, SUB_J, V2, InvalidParams, MSInstance, build_h_prime_np, s_, u_, v_)
from .reduction import (Assembler, NotSimple, NotStandard, PlacedGadget, StandardTourView, big_m_for,
                        sigma_delta)

PP_KINDS = ("s1", "s2_ir", "s4")


class AssemblyFailed(RuntimeError):
    pass


@dataclass(frozen=True)
class StarSequence:
    vertices: tuple[int, ...]
    labels: tuple[int, ...]
    kind: str


def regular_vertices(n: int) -> list[str]:
    out = []
    for i in range(1, n + 1):
        out.append(v_(i - 1, 1))
        out += [v_(i, j) for j in range(2, 8)]
    return out


def _raw_sequences(n: int, p: int) -> list[tuple[str, ...]]:
    q = p - 1
    seqs: list[tuple[str, ...]] = []
    for i in range(1, n + 1):
        seqs.append((v_(i - 1, 8), v_(i, 3), v_(i, 5), v_(i, 7)))
    for i in range(1, n + 1):
        seqs.append((v_(i - 1, 1), u_(i, 2, 1, q), u_(i, 6, 1, q)))
    for i in range(2, n + 1):
        seqs.append((v_(i - 1, 1), u_(i - 1, 1, 2, 1), u_(i, 4, 1, q)))
    for i in range(1, n + 1):
        for j in DOWN_J:
            seqs.append((v_(i, j), u_(i, j, 1, 1), u_(i, j - 1, j, q)))
    for i in range(1, n + 1):
        for j in SUB_J:
            seqs.append((v_(i, j), u_(i, j, j + 1, 1), s_(i, j)))
    seqs.append((v_(0, 1), u_(0, 1, 8, 1), u_(1, 4, 1, q)))
    return seqs


def build_star_sequences(n: int, p: int, inst: MSInstance | None = None) -> list[StarSequence]:
    if not isinstance(n, int) or n < 1:
        raise InvalidParams("n must be an integer >= 1")
    inst = inst or build_h_prime_np(n, p)
    g = inst.graph
    ix = g.index
    regular = {ix(x) for x in regular_vertices(n)}
    seqs = [tuple(ix(x) for x in s) for s in _raw_sequences(n, p)]
    covered = set()
    for s in seqs:
        for x in s[1:]:
            e = edge_key(s[0], x)
            if not g.has_edge(*e):
                raise AssemblyFailed(f"star {[g.label(v) for v in s]} uses a non-edge")
            covered.add(e)
    for u, v, _ in sorted(g.edges()):
        if (u, v) not in covered:
            if u in regular and v in regular:
                raise AssemblyFailed(f"edge {g.label(u)}-{g.label(v)} joins two regular vertices")
            seqs.append((v, u) if u in regular else (u, v))
    seqs.append((ix(v_(n, 8)),))
    seqs.append((ix(V2),))

    labels: list[list[int | None]] = [[0] * 4 if len(s) == 4 else [None] * len(s) for s in seqs]
    given: dict[int, int] = {}
    for s, lab in zip(seqs, labels):
        if len(s) == 4:
            for v in s:
                given[v] = 0
    for s, lab in zip(seqs, labels):
        if len(s) == 4:
            continue
        for i, v in enumerate(s):
            if v in given:
                lab[i] = 1 - given.pop(v)
            else:
                lab[i] = 0
                given[v] = 0
    out = []
    for s, lab in zip(seqs, labels):
        if len(s) == 1:
            kind = "s1"
        elif len(s) == 2:
            kind = "s2_ii" if all(v not in regular for v in s) else "s2_ir"
        else:
            kind = f"s{len(s)}"
        out.append(StarSequence(s, tuple(int(x) for x in lab), kind))  # type: ignore[arg-type]
    _check_sequences(g, out)
    return out


def _check_sequences(g: WeightedGraph, seqs: list[StarSequence]) -> None:
    count = [0] * g.n
    labs: list[list[int]] = [[] for _ in range(g.n)]
    edges = []
    for s in seqs:
        for v, lab in zip(s.vertices, s.labels):
            count[v] += 1
            labs[v].append(lab)
        edges += [edge_key(s.vertices[0], x) for x in s.vertices[1:]]
    if any(c != 2 for c in count):
        bad = [g.label(v) for v, c in enumerate(count) if c != 2]
        raise AssemblyFailed(f"vertices not in exactly two sequences: {bad[:5]}")
    if sorted(edges) != sorted((u, v) for u, v, _ in g.edges()):
        raise AssemblyFailed("stars do not partition the edge set")
    if any(sorted(x) != [0, 1] for x in labs):
        raise AssemblyFailed("some vertex lacks complementary labels")


def e_sequence(n: int) -> list[str]:
    seq = [V2, v_(0, 8)]
    for i in range(1, n + 1):
        seq += [v_(i, 2), v_(i, 8), v_(i, 6), v_(i, 4)]
    return seq


def default_eps_tilde(n: int, eps: Fraction) -> Fraction:
    """Small enough that ``n * eps_tilde`` stays below every positive flip gain."""
    return eps / 2 ** (n + 1)


def weight_quantum(g: WeightedGraph) -> Fraction:
    """Largest rational dividing every weight; flip gains are integer multiples of it."""
    den = 1
    for _, _, w in g.edges():
        den = den * w.denominator // math.gcd(den, w.denominator)
    num = 0
    for _, _, w in g.edges():
        num = math.gcd(num, int(w * den))
    return Fraction(num, den)


@dataclass(frozen=True, eq=False)
class Reduction25Artifacts:
    n: int
    p: int
    h_instance: MSInstance
    sequences: tuple[StarSequence, ...]
    graph: WeightedGraph
    big_m: Fraction
    eps_tilde: Fraction
    gadgets: tuple[PlacedGadget, ...]
    edge_owner: dict[Edge, int]
    node_gadget: tuple[int, ...]
    star_gadget: tuple[int, ...]
    occurrences: tuple[tuple[tuple[int, int], tuple[int, int]], ...]
    pp_pairs: tuple[tuple[int, int], ...]

    @property
    def h(self) -> WeightedGraph:
        return self.h_instance.graph

    @property
    def eps(self) -> Fraction:
        return self.h_instance.eps

    @property
    def instance(self):
        from .kopt import TSPInstance
        return TSPInstance(self.graph, self.big_m)

    def weight(self, tour: Tour) -> Fraction:
        return tour_weight(self.graph, tour, self.big_m)

    def s0(self, v: int) -> tuple[int, int]:
        return self.occurrences[v][0]

    def s1(self, v: int) -> tuple[int, int]:
        return self.occurrences[v][1]


def build_reduction_25(n: int, p: int, eps_tilde: Fraction | None = None, check_p: bool = True) -> Reduction25Artifacts:
    if check_p and (not isinstance(p, int) or p < 7):
        raise PreconditionViolation("p must be at least 7 so that H has girth at least nine")
    inst = build_h_prime_np(n, p)
    h = inst.graph
    et = default_eps_tilde(n, inst.eps) if eps_tilde is None else Fraction(eps_tilde)
    if n * et >= weight_quantum(h):
        raise PreconditionViolation("n * eps_tilde must stay below the smallest positive flip gain")
    seqs = build_star_sequences(n, p, inst)
    regular = {h.index(x) for x in regular_vertices(n)}

    asm = Assembler()
    reg_node, irr_node = make_node_gadget("regular"), make_node_gadget("irregular")
    node_gid = [asm.add(reg_node if v in regular else irr_node, ("node", v), h.label(v)) for v in range(h.n)]
    star_gid = []
    occ: list[list[tuple[int, int, int]]] = [[] for _ in range(h.n)]
    for si, s in enumerate(seqs):
        vs = s.vertices
        if s.kind == "s4":
            g = make_star_gadget("s4", eps_tilde=et)
        elif s.kind == "s1":
            g = make_star_gadget("s1")
        else:
            ws = [h.weight(vs[0], x) for x in vs[1:]]
            sig, dlt = sigma_delta(s.labels, ws, centre=True)
            g = make_star_gadget(s.kind, sig, dlt)
        gid = asm.add(g, ("star", si), f"S{si}")
        star_gid.append(gid)
        for i, v in enumerate(vs):
            side = g.sides[i]
            if (len(side) == 1) != (v in regular):
                raise AssemblyFailed(f"side {i + 1} of star {si} does not match node gadget of {h.label(v)}")
            asm.identify((gid, g.names[side[0]]), (node_gid[v], "X"))
            if len(side) == 2:
                asm.identify((gid, g.names[side[1]]), (node_gid[v], "Xb"))
            occ[v].append((s.labels[i], si, i))

    pp_seq = {}
    for si, s in enumerate(seqs):
        if s.kind in PP_KINDS:
            ev = [v for v in s.vertices if h.label(v) in set(e_sequence(n))]
            if len(ev) != 1:
                raise AssemblyFailed(f"star {si} has {len(ev)} vertices in the pairing sequence")
            if ev[0] in pp_seq:
                raise AssemblyFailed(f"vertex {h.label(ev[0])} relates to two PP-portals")
            pp_seq[ev[0]] = si
    order = [h.index(x) for x in e_sequence(n)]
    if len(order) % 2 or set(order) != set(pp_seq):
        raise AssemblyFailed("PP-portal pairing does not match the pairing sequence")
    pairs = []
    for a, b in zip(order[0::2], order[1::2]):
        sa, sb = pp_seq[a], pp_seq[b]
        asm.identify((star_gid[sa], "Z"), (star_gid[sb], "Z"))
        pairs.append((sa, sb))

    graph, placed, owner = asm.build()
    occurrences = []
    for v in range(h.n):
        o = sorted(occ[v])
        occurrences.append(((o[0][1], o[0][2]), (o[1][1], o[1][2])))
    return Reduction25Artifacts(n, p, inst, tuple(seqs), graph, big_m_for(graph), et, tuple(placed), owner,
                                tuple(node_gid), tuple(star_gid), tuple(occurrences), tuple(pairs))


def _vector(label) -> tuple[int, ...]:
    return STAR4_VECTORS[label] if isinstance(label, str) else label


def _globalize(pg: PlacedGadget, local) -> list[Edge]:
    return [edge_key(pg.vmap[u], pg.vmap[v]) for u, v in local]


def initial_tour_tau0(red: Reduction25Artifacts) -> Tour:
    cut = red.h_instance.initial_cut
    edges: set[Edge] = set()
    for gid in red.node_gadget:
        pg = red.gadgets[gid]
        edges.update(_globalize(pg, pg.gadget.catalog["standard"]))
    for si, s in enumerate(red.sequences):
        pg = red.gadgets[red.star_gadget[si]]
        if s.kind == "s4":
            lab = "a"
        else:
            lab = tuple(int(cut[v]) ^ s.labels[i] for i, v in enumerate(s.vertices))
        edges.update(_globalize(pg, standard_subtour(pg.gadget, lab).edges))
    try:
        tour = Tour(red.graph.n, edges)
    except ValueError as exc:
        raise AssemblyFailed(f"initial subgraph is not a tour: {exc}") from exc
    view = is_standard_25(red, tour)
    if isinstance(view, NotStandard):
        raise AssemblyFailed(f"initial tour is not standard: {view}")
    if phi(red, tour) != cut:
        raise AssemblyFailed("initial tour does not map to the initial cut")
    return tour


def is_standard_25(red: Reduction25Artifacts, tour: Tour) -> StandardTourView | NotStandard:
    es = tour.edges
    for e in es:
        if e not in red.edge_owner:
            a, b = e
            return NotStandard(f"tour uses non-construction edge {red.graph.label(a)}-{red.graph.label(b)}")
    labels: dict[int, Hashable] = {}
    for gid in red.node_gadget + red.star_gadget:
        pg = red.gadgets[gid]
        hits = pg.gadget.labels_of(pg.restrict(es))
        if not hits:
            return NotStandard(f"gadget {pg.owner} has a non-standard subtour", gid)
        labels[gid] = hits[0]
    for v in range(red.h.n):
        (sa, ia), (sb, ib) = red.occurrences[v]
        a = _vector(labels[red.star_gadget[sa]])[ia]
        b = _vector(labels[red.star_gadget[sb]])[ib]
        if a == b:
            return NotStandard(f"both stars of {red.h.label(v)} give side value {a}", red.star_gadget[sa])
    return StandardTourView(tour, labels)


def phi(red: Reduction25Artifacts, tour: Tour) -> Cut:
    view = is_standard_25(red, tour)
    if isinstance(view, NotStandard):
        raise view
    return phi_from_view(red, view)


def phi_from_view(red: Reduction25Artifacts, view: StandardTourView) -> Cut:
    out = []
    for v in range(red.h.n):
        si, i = red.s0(v)
        out.append(_vector(view.labels[red.star_gadget[si]])[i] == 1)
    return Cut(tuple(out))


def star_kind_counts(red: Reduction25Artifacts) -> dict[str, int]:
    out: dict[str, int] = {}
    for s in red.sequences:
        out[s.kind] = out.get(s.kind, 0) + 1
    return out


def check_simple(red: Reduction25Artifacts) -> bool:
    """The assembler refuses loops and parallel edges, so a built instance is simple."""
    seen = set()
    for u, v, _ in red.graph.edges():
        if u == v or (u, v) in seen:
            raise NotSimple(f"bad edge {u}-{v}")
        seen.add((u, v))
    return True
