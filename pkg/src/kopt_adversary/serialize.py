"""JSON encoding for the core value types.

Rationals are written as ``{"num": "<int>", "den": "<int>"}`` so that any
magnitude round-trips exactly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .core import Cut, Swap, Tour, WeightedGraph


def rational_to_json(x: Fraction) -> dict[str, str]:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def rational_from_json(d: dict[str, Any]) -> Fraction:
    den = int(d["den"])
    if den <= 0:
        raise ValueError("denominator must be positive")
    return Fraction(int(d["num"]), den)


def graph_to_json(g: WeightedGraph) -> dict[str, Any]:
    return {
        "labels": list(g.labels),
        "edges": [[u, v, rational_to_json(w)] for u, v, w in g.edges()],
    }


def graph_from_json(d: dict[str, Any]) -> WeightedGraph:
    return WeightedGraph(d["labels"], [(int(u), int(v), rational_from_json(w)) for u, v, w in d["edges"]])


def cut_to_json(c: Cut) -> list[int]:
    return [int(x) for x in c.assignment]


def cut_from_json(d: list[int]) -> Cut:
    return Cut(tuple(bool(x) for x in d))


def tour_to_json(t: Tour) -> dict[str, Any]:
    return {"n": t.n, "order": list(t.order)}


def tour_from_json(d: dict[str, Any]) -> Tour:
    t = Tour.from_order([int(v) for v in d["order"]])
    if t.n != int(d["n"]):
        raise ValueError("tour length does not match its vertex count")
    return t


def swap_to_json(s: Swap) -> dict[str, Any]:
    return {
        "removed": [list(e) for e in sorted(s.removed)],
        "added": [list(e) for e in sorted(s.added)],
    }


def swap_from_json(d: dict[str, Any]) -> Swap:
    return Swap(
        frozenset((int(a), int(b)) for a, b in d["removed"]),
        frozenset((int(a), int(b)) for a, b in d["added"]),
    )
