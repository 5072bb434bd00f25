"""Backend selection for the integer hot loops.

The compiled extension is used when it imported successfully and every
weight sum the loop can form fits in a signed 64-bit integer; otherwise the
pure-Python implementation runs on unbounded ints.  Set
``KOPT_ADVERSARY_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _kernels_py as py_impl

try:
    if os.environ.get("KOPT_ADVERSARY_PURE", "") not in ("", "0"):
        raise ImportError("fallback forced by environment")
    from . import _kernels as c_impl  # type: ignore[attr-defined]
except ImportError:
    c_impl = None

BACKEND = "compiled" if c_impl is not None else "python"
INT64_SAFE = 1 << 62


def common_scale(weights: Sequence[Fraction]) -> int:
    scale = 1
    for w in weights:
        d = Fraction(w).denominator
        scale = scale * d // math.gcd(scale, d)
    return scale


@dataclass(frozen=True)
class IntGraph:
    """CSR adjacency with integer weights ``w_int = w * scale``."""

    n: int
    scale: int
    indptr: tuple[int, ...]
    nbr: tuple[int, ...]
    eid: tuple[int, ...]
    w: tuple[int, ...]
    eu: tuple[int, ...]
    ev: tuple[int, ...]
    csr_w: tuple[int, ...]
    max_abs: int

    @classmethod
    def build(cls, n: int, edges: Sequence[tuple[int, int, Fraction]]) -> "IntGraph":
        scale = common_scale([w for _, _, w in edges])
        eu = tuple(min(u, v) for u, v, _ in edges)
        ev = tuple(max(u, v) for u, v, _ in edges)
        w = tuple(int(Fraction(x) * scale) for _, _, x in edges)
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for e, (u, v) in enumerate(zip(eu, ev)):
            adj[u].append((v, e))
            adj[v].append((u, e))
        indptr = [0]
        nbr: list[int] = []
        eid: list[int] = []
        for a in adj:
            a.sort()
            nbr.extend(x for x, _ in a)
            eid.extend(e for _, e in a)
            indptr.append(len(nbr))
        csr_w = tuple(w[e] for e in eid)
        return cls(n, scale, tuple(indptr), tuple(nbr), tuple(eid), w, eu, ev, csr_w,
                   max((abs(x) for x in w), default=0))

    def fits(self, terms: int) -> bool:
        return self.max_abs * max(terms, 1) < INT64_SAFE


def pick(ig: IntGraph, terms: int):
    if c_impl is not None and ig.fits(terms):
        return c_impl
    return py_impl


def flip_run(ig: IntGraph, assign: list[int], pivot_code: int, state: int, step_limit: int, impl=None):
    maxdeg = max((ig.indptr[v + 1] - ig.indptr[v] for v in range(ig.n)), default=0)
    mod = impl or pick(ig, 4 * maxdeg + 4)
    return mod.flip_run(ig.indptr, ig.nbr, ig.csr_w, assign, pivot_code, state, step_limit)


def enumerate_moves(ig: IntGraph, in_tour: Sequence[bool], succ, pred, pos, order,
                    kmax: int, two_five: bool, improving_only: bool, impl=None):
    mod = impl or pick(ig, 4 * kmax + 4)
    if mod is c_impl and kmax >= 6:
        mod = py_impl
    return mod.enumerate_moves(ig.indptr, ig.nbr, ig.eid, ig.w, ig.eu, ig.ev, in_tour,
                               succ, pred, pos, order, kmax, two_five, improving_only)
