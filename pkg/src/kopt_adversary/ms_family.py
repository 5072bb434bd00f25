"""The layered Max-Cut family with exponentially long Flip runs.

Level ``i`` of ``H_n`` is the path ``v[i][1] .. v[i][8]``; level 0 is the
single edge ``v[0][1] v[0][8]``.  ``v[i-1][1]`` is joined to
``v[i][2], v[i][4], v[i][6]`` and ``v[i-1][8]`` to ``v[i][3], v[i][5],
v[i][7]``; ``v[n][1] - v'1 - v'2`` hangs off the top.  ``H_{n,p}`` replaces
eight edges per level (and the level-0 edge) by paths of length ``p``;
``H'_{n,p}`` additionally subdivides ``v[i][j] v[i][j-1]`` for j = 3, 5, 7.

The subdivision vertex hangs on ``v[i][j-1]`` through a negative edge of
weight ``-(8-j) 8^i`` and meets ``v[i][j]`` with ``(8-j) 8^i - eps``, so it
copies the side of ``v[i][j-1]`` and relays it to ``v[i][j]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import Cut, PathCover, WeightedGraph

ODD_J = (1, 3, 5, 7)
DOWN_J = (2, 4, 6)
SUB_J = (3, 5, 7)


def v_(i: int, j: int) -> str:
    return f"v[{i}][{j}]"


def u_(i: int, j: int, jp: int, t: int) -> str:
    return f"u[{i}][{j}][{jp}]^{t}"


def s_(i: int, j: int) -> str:
    """Subdivision vertex on v[i][j] v[i][j-1]."""
    return f"u[{i}][{j}][{j - 1}]"


V1, V2 = "v'1", "v'2"


class InvalidParams(ValueError):
    pass


@dataclass(frozen=True)
class LongPath:
    """A replaced edge: ``start = a``, interior ``u[i][j][jp]^1..^(p-1)``, ``end = b``."""

    i: int
    j: int
    jp: int
    a: str
    b: str

    def interior(self, p: int) -> list[str]:
        return [u_(self.i, self.j, self.jp, t) for t in range(1, p)]

    def vertices(self, p: int) -> list[str]:
        return [self.a, *self.interior(p), self.b]


def long_paths(n: int) -> list[LongPath]:
    out = [LongPath(0, 1, 8, v_(0, 1), v_(0, 8))]
    for i in range(1, n + 1):
        for j in ODD_J:
            out.append(LongPath(i, j, j + 1, v_(i, j), v_(i, j + 1)))
        for j in DOWN_J:
            out.append(LongPath(i, j, 1, v_(i, j), v_(i - 1, 1)))
    return out


@dataclass(frozen=True)
class MSInstance:
    graph: WeightedGraph
    initial_cut: Cut
    n: int
    p: int
    eps: Fraction
    subdivided: bool

    def idx(self, label: str) -> int:
        return self.graph.index(label)

    def name(self, v: int) -> str:
        return self.graph.label(v)

    @property
    def subdivision_vertices(self) -> list[int]:
        if not self.subdivided:
            return []
        return [self.idx(s_(i, j)) for i in range(1, self.n + 1) for j in SUB_J]

    def quadruple(self, i: int) -> tuple[int, int, int, int]:
        return (self.idx(v_(i - 1, 8)), self.idx(v_(i, 3)), self.idx(v_(i, 5)), self.idx(v_(i, 7)))


def _check(n: int, p: int, min_n: int) -> None:
    if not isinstance(n, int) or n < min_n:
        raise InvalidParams(f"n must be an integer >= {min_n}")
    if not isinstance(p, int) or p < 3 or p % 2 == 0:
        raise InvalidParams("p must be an odd integer >= 3")


def default_eps(n: int, p: int) -> Fraction:
    """``2^-n`` shrunk by ``2^bitlen(p-1)`` so ``(p-1)*eps < 1`` keeps level gaps strict."""
    return Fraction(1, 2 ** (n + (p - 1).bit_length()))


def level_scale(i: int, n: int, scheme: str) -> int:
    if scheme == "level":
        return 8 ** i
    if scheme == "top":
        return 8 ** n
    raise InvalidParams(f"unknown weight scheme {scheme!r}")


def _build(n: int, p: int, subdivided: bool, eps: Fraction | None, scheme: str) -> MSInstance:
    eps = default_eps(n, p) if eps is None else Fraction(eps)
    labels: list[str] = []
    edges: list[tuple[str, str, Fraction]] = []
    odd: dict[str, bool] = {}

    def add_vertex(name: str, is_odd: bool) -> None:
        labels.append(name)
        odd[name] = is_odd

    add_vertex(V1, True)
    add_vertex(V2, False)
    for i in range(n + 1):
        for j in (range(1, 9) if i else (1, 8)):
            add_vertex(v_(i, j), j % 2 == 1)

    for lp in long_paths(n):
        scale = level_scale(lp.i, n, scheme)
        if lp.i == 0:
            base, sign = Fraction(7), 1
        elif lp.jp == lp.j + 1:
            base, sign = Fraction((8 - lp.j) * scale), 1
        elif lp.j == 4:
            base, sign = Fraction(-scale), -1
        else:
            base, sign = Fraction(scale), 1
        verts = lp.vertices(p)
        for t, name in enumerate(lp.interior(p), 1):
            if lp.jp == 1 and lp.j == 4:
                add_vertex(name, False)
            else:
                add_vertex(name, odd[lp.a] != (t % 2 == 1))
        for t in range(p):
            edges.append((verts[t], verts[t + 1], base - sign * t * eps))

    for i in range(1, n + 1):
        scale = level_scale(i, n, scheme)
        for j in SUB_J:
            w = Fraction((8 - j) * scale)
            if subdivided:
                add_vertex(s_(i, j), False)
                edges.append((v_(i, j), s_(i, j), w - eps))
                edges.append((s_(i, j), v_(i, j - 1), -w))
            else:
                edges.append((v_(i, j), v_(i, j - 1), w))
        for j, w in zip(SUB_J, (1, -1, 1)):
            edges.append((v_(i - 1, 8), v_(i, j), Fraction(w)))
    edges.append((v_(n, 1), V1, Fraction(8 ** (n + 1))))
    edges.append((V1, V2, Fraction(2 * 8 ** (n + 1))))

    g = WeightedGraph.from_labelled(labels, edges)
    cut = Cut(tuple(odd[x] for x in labels))
    return MSInstance(g, cut, n, p, eps, subdivided)


def build_h_np(n: int, p: int, eps: Fraction | None = None, scheme: str = "level") -> MSInstance:
    """``H_{n,p}`` with the contracted weight scheme and restricted start cut."""
    _check(n, p, 0)
    return _build(n, p, False, eps, scheme)


def build_h_prime_np(n: int, p: int, eps: Fraction | None = None, scheme: str = "level") -> MSInstance:
    """``H'_{n,p}``; for n = 0 this coincides with ``H_{0,p}``."""
    _check(n, p, 0)
    return _build(n, p, n > 0, eps, scheme)


def canonical_cover(n: int, p: int, inst: MSInstance | None = None) -> PathCover:
    _check(n, p, 1)
    g = (inst or build_h_np(n, p)).graph
    ix = g.index
    q = p - 1
    two_paths: list[tuple[str, str, str]] = []
    for i in range(1, n + 1):
        two_paths += [
            (v_(i, 2), v_(i, 3), u_(i, 3, 4, 1)),
            (v_(i, 4), v_(i, 5), u_(i, 5, 6, 1)),
            (v_(i, 6), v_(i, 7), u_(i, 7, 8, 1)),
            (u_(i, 1, 2, q), v_(i, 2), u_(i, 2, 1, 1)),
            (u_(i, 3, 4, q), v_(i, 4), u_(i, 4, 1, 1)),
            (u_(i, 5, 6, q), v_(i, 6), u_(i, 6, 1, 1)),
        ]
    for i in range(2, n + 1):
        two_paths += [
            (u_(i, 2, 1, q), v_(i - 1, 1), u_(i, 6, 1, q)),
            (u_(i, 4, 1, q), v_(i - 1, 1), u_(i - 1, 1, 2, 1)),
            (v_(i, 3), v_(i - 1, 8), v_(i, 7)),
            (v_(i, 5), v_(i - 1, 8), u_(i - 1, 7, 8, q)),
        ]
    two_paths += [
        (u_(1, 2, 1, q), v_(0, 1), u_(1, 6, 1, q)),
        (u_(1, 4, 1, q), v_(0, 1), u_(0, 1, 8, 1)),
        (v_(1, 3), v_(0, 8), v_(1, 7)),
        (v_(1, 5), v_(0, 8), u_(0, 1, 8, q)),
    ]
    paths = [tuple(ix(x) for x in tp) for tp in two_paths]
    covered = set()
    for a, b, c in paths:
        covered.add(frozenset((a, b)))
        covered.add(frozenset((b, c)))
    for u, v, _ in g.edges():
        if frozenset((u, v)) not in covered:
            paths.append((u, v))
    paths += [(ix(V2),), (ix(v_(n, 8)),)]
    return PathCover(tuple(paths))


def _segment(i: int, j: int, p: int) -> list[str]:
    return LongPath(i, j, j + 1, v_(i, j), v_(i, j + 1)).vertices(p)


def _down(i: int, j: int, p: int) -> list[str]:
    return [u_(i, j, 1, t) for t in range(1, p)]


def predict_flip_projection(n: int, p: int) -> list[str]:
    """The predicted flip order with subdivision vertices omitted, as labels."""
    _check(n, p, 0)
    seq = [v_(0, 1), *[u_(0, 1, 8, t) for t in range(1, p)], v_(0, 8)]
    for i in range(1, n + 1):
        prev = seq
        seq = []
        for j in (1, 3, 5):
            seq += _segment(i, j, p) + _down(i, j + 1, p) + prev
        seq += _segment(i, 7, p)
    return seq


def predicted_length(n: int, p: int) -> int:
    """Closed form of ``len(predict_flip_projection(n, p))``."""
    length = p + 1
    for _ in range(n):
        length = 3 * length + 7 * p + 1
    return length


PI_CYCLE: tuple[tuple[int, int, int, int], ...] = (
    (1, 1, 1, 1), (1, 0, 1, 1), (0, 0, 1, 1), (0, 0, 0, 1),
    (1, 0, 0, 1), (1, 0, 0, 0), (0, 0, 0, 0), (0, 1, 0, 0),
    (1, 1, 0, 0), (1, 1, 1, 0), (0, 1, 1, 0), (0, 1, 1, 1),
)


class OffCycle(ValueError):
    pass


def pi_successor(state: Sequence[int | bool]) -> tuple[int, int, int, int]:
    s = tuple(int(bool(x)) for x in state)
    try:
        k = PI_CYCLE.index(s)  # type: ignore[arg-type]
    except ValueError:
        raise OffCycle(f"state {s} is not on the cycle") from None
    return PI_CYCLE[(k + 1) % len(PI_CYCLE)]


def quadruple_state(inst: MSInstance, cut: Cut, i: int) -> tuple[int, int, int, int]:
    return tuple(int(cut[v]) for v in inst.quadruple(i))  # type: ignore[return-value]
