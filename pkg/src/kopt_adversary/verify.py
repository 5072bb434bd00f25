"""Executable checks for the gadget library, the reductions and the run-length growth.

Each check appends one :class:`Claim` to a :class:`Report`.  A failing claim
always carries a witness string.  ``MUTATIONS`` lists deliberately broken
constructions; each of them must make at least one check fail.
"""

from __future__ import annotations

import contextlib
import importlib
import csv
import io
import json
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Iterator, Sequence
from unittest import mock

from . import gadgets as G
from . import ms_family as MS
from . import reduction as R
from . import reduction25 as R25
from .core import Cut, Tour, WeightedGraph, apply_flip, apply_swap, cut_value, edge_key, flip_gain
from .kopt import KSpec, enumerate_swaps, run_kopt
from .maxcut import run_flip
from .pivots import PivotRule


class InfeasibleScale(ValueError):
    pass


@dataclass
class Claim:
    claim_id: str
    anchor: str
    status: str
    witness: str | None
    runtime: float


@dataclass
class Report:
    claims: list[Claim] = field(default_factory=list)
    rows: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status == "pass" for c in self.claims)

    def failed(self) -> list[Claim]:
        return [c for c in self.claims if c.status != "pass"]

    def extend(self, other: "Report") -> "Report":
        self.claims += other.claims
        self.rows += other.rows
        return self

    @contextlib.contextmanager
    def check(self, claim_id: str, anchor: str) -> Iterator[list[str]]:
        """Collect witnesses in the yielded list; an exception also counts as a failure."""
        wit: list[str] = []
        t = time.perf_counter()
        try:
            yield wit
        except Exception as exc:  # noqa: BLE001 - a crash is a failed claim, not a crash of the suite
            wit.append(f"{type(exc).__name__}: {exc}")
        dt = time.perf_counter() - t
        self.claims.append(Claim(claim_id, anchor, "fail" if wit else "pass", "; ".join(wit[:5]) or None, dt))

    def to_json(self) -> str:
        return json.dumps({"ok": self.ok, "claims": [asdict(c) for c in self.claims], "rows": self.rows},
                          indent=2, default=str)

    def rows_csv(self) -> str:
        if not self.rows:
            return ""
        buf = io.StringIO()
        wr = csv.DictWriter(buf, fieldnames=list(self.rows[0]), lineterminator="\n")
        wr.writeheader()
        wr.writerows(self.rows)
        return buf.getvalue()


def threads() -> int:
    try:
        return max(1, int(os.environ.get("KOPT_ADVERSARY_THREADS", "1")))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# gadgets

TABLE1 = {
    1: {3: [("0", "1")]},
    2: {3: [("00", "01"), ("00", "10"), ("01", "11"), ("10", "11")], 4: [("00", "11"), ("01", "10")]},
    3: {
        3: [("000", "001"), ("000", "010"), ("000", "100"), ("001", "011"), ("001", "101"), ("010", "011"),
            ("010", "110"), ("100", "101"), ("100", "110"), ("011", "111"), ("101", "111"), ("110", "111")],
        4: [("000", "011"), ("000", "101"), ("000", "110"), ("001", "010"), ("001", "100"), ("001", "111"),
            ("010", "100"), ("011", "101"), ("100", "111"), ("101", "110")],
        5: [("000", "111"), ("001", "110"), ("010", "101"), ("100", "011")],
        6: [("010", "111"), ("011", "110")],
    },
}

STAR4_WEIGHTS = {"a": (-1, -1), "b": (0, -1), "c": (-1, -1), "d": (0, -1), "e": (-1, -1), "f": (0, -1),
                 "g": (-1, 0), "h": (0, 0), "i": (-1, 0), "j": (0, 0), "k": (-1, 0), "l": (0, 0),
                 "m": (-1, 0), "n": (0, 0)}
# (constant, coefficient of eps_tilde)


def _vec(s: str) -> tuple[int, ...]:
    return tuple(int(c) for c in s)


def _rand_params(rng: random.Random, m: int) -> tuple[list[Fraction], list[Fraction]]:
    def r():
        return Fraction(rng.randint(-50, 50), rng.randint(1, 9))
    return [r() for _ in range(m)], [r() for _ in range(m)]


def verify_gadget_lemmas(draws: int = 5, seed: int = 7) -> Report:
    rep = Report()
    rng = random.Random(seed)

    with rep.check("path-uniqueness-and-weights", "path gadgets: one s-subtour per label, closed-form weight") as w:
        for t in (1, 2, 3):
            for _ in range(draws):
                s, d = _rand_params(rng, t - 1)
                g = G.make_path_gadget(t, s, d)
                subs = G.enumerate_subtours(g)
                for vec in product((0, 1), repeat=t):
                    hits = [x for x in subs if G.label_vector(g, x) == vec]
                    if len(hits) != 1:
                        w.append(f"path-{t} {vec}: {len(hits)} subtours")
                    elif hits[0].weight() != G.path_weight_formula(s, d, vec):
                        w.append(f"path-{t} {vec}: weight {hits[0].weight()}")

    with rep.check("catalog-consistency", "catalog entries are exactly the labelled subtours") as w:
        for g in G.reference_gadgets():
            if g.family not in ("path", "star") or g.kind == "s4":
                continue
            subs = G.enumerate_subtours(g)
            labelled = {x.edges: G.label_vector(g, x) for x in subs if G.label_vector(g, x) is not None}
            cat = {e: lab for lab, e in g.catalog.items()}
            if labelled != cat:
                w.append(f"{g.kind}: catalog differs from enumeration")

    with rep.check("table-involved-edges", "involved-edge counts between standard path subtours") as w:
        for t, rows in TABLE1.items():
            s, d = _rand_params(rng, t - 1)
            g = G.make_path_gadget(t, s, d)
            for count, pairs in rows.items():
                for a, b in pairs:
                    got = G.involved_edges(G.standard_subtour(g, _vec(a)), G.standard_subtour(g, _vec(b)))
                    if got != count:
                        w.append(f"path-{t} {{{a},{b}}}: {got} != {count}")

    with rep.check("star-uniqueness-and-weights", "star gadgets: one s-subtour per label, centre-relative weight") as w:
        for kind, t in (("s1", 1), ("s2_ir", 2), ("s2_ii", 2), ("s3", 3)):
            for _ in range(draws):
                s, d = _rand_params(rng, t - 1)
                g = G.make_star_gadget(kind, s, d)
                subs = G.enumerate_subtours(g)
                for vec in product((0, 1), repeat=t):
                    hits = [x for x in subs if G.label_vector(g, x) == vec]
                    if len(hits) != 1:
                        w.append(f"{kind} {vec}: {len(hits)} subtours")
                    elif hits[0].weight() != G.star_weight_formula(s, d, vec):
                        w.append(f"{kind} {vec}: weight {hits[0].weight()}")
                if sum(G.label_vector(g, x) is not None for x in subs) != 2 ** t:
                    w.append(f"{kind}: labelled subtour count differs from 2^{t}")

    with rep.check("star4-catalog", "star-4: exactly 14 labelled subtours with tabulated weights") as w:
        et = Fraction(1, 1024)
        g = G.make_star_gadget("s4", eps_tilde=et)
        subs = G.enumerate_subtours(g)
        labelled = [x for x in subs if G.label_vector(g, x) is not None]
        if len(labelled) != 14:
            w.append(f"{len(labelled)} labelled subtours")
        for letter in G.STAR4_LETTERS:
            sub = G.standard_subtour(g, letter)
            c, e = STAR4_WEIGHTS[letter]
            if sub.weight() != c + e * et:
                w.append(f"({letter}) weight {sub.weight()}")
            if G.label_vector(g, sub) != G.STAR4_VECTORS[letter]:
                w.append(f"({letter}) label {G.label_vector(g, sub)}")

    with rep.check("star4-chain", "star-4: consecutive cycle states differ by a 2- or 2.5-change") as w:
        g = G.make_star_gadget("s4", eps_tilde=Fraction(1, 1024))
        for a, b in G.STAR4_CHANGE_EDGES:
            ch = G.classify_change(g, G.standard_subtour(g, a), G.standard_subtour(g, b))
            if ch.kind == "other":
                w.append(f"({a})->({b}) is {ch}")
        for a, b in G.STAR4_TWO_SWAP_EDGES:
            if G.involved_edges(G.standard_subtour(g, a), G.standard_subtour(g, b)) != 4:
                w.append(f"({a})->({b}) is not a 2-swap")

    with rep.check("star-hamming-changes", "labels at Hamming distance one differ by a single change") as w:
        for kind, t in (("s1", 1), ("s2_ir", 2), ("s2_ii", 2), ("s3", 3)):
            s, d = _rand_params(rng, t - 1)
            g = G.make_star_gadget(kind, s, d)
            for a in product((0, 1), repeat=t):
                for i in range(t):
                    b = tuple(x ^ (j == i) for j, x in enumerate(a))
                    ch = G.classify_change(g, G.standard_subtour(g, a), G.standard_subtour(g, b))
                    if ch.kind == "other" or ch.side != i + 1:
                        w.append(f"{kind} {a}->{b}: {ch}")

    with rep.check("vertex-gadgets", "stick/buoy/XOR involve 0/2/2q-2 edges; XOR has only two subtours") as w:
        for kind, q, want in (("stick", None, 0), ("buoy", None, 2)):
            g = G.make_vertex_gadget(kind, q)
            got = G.involved_edges(G.standard_subtour(g, "odd"), G.standard_subtour(g, "even"))
            if got != want:
                w.append(f"{kind}: {got}")
        for q in (3, 4, 5):
            g = G.make_vertex_gadget("xor", q)
            n = len(G.enumerate_subtours(g))
            got = G.involved_edges(G.standard_subtour(g, "odd"), G.standard_subtour(g, "even"))
            if n != 2 or got != 2 * q - 2:
                w.append(f"xor({q}): {n} subtours, {got} involved edges")

    with rep.check("node-gadgets", "node gadgets have a single subtour") as w:
        for kind in ("regular", "irregular"):
            g = G.make_node_gadget(kind)
            if len(G.enumerate_subtours(g)) != 1:
                w.append(kind)
    return rep


# ---------------------------------------------------------------------------
# reductions

EXHAUSTIVE_CUTS = 6
EXHAUSTIVE_CLOSURE_VERTICES = 80


def _random_cut(rng: random.Random, n: int) -> Cut:
    return Cut(tuple(rng.random() < 0.5 for _ in range(n)))


def check_reduction_instance(rep: Report, red: R.ReductionArtifacts, samples: int = 100, seed: int = 1,
                             closure_tours: int = 0) -> Report:
    h = red.h
    k = red.k
    rng = random.Random(seed)
    exhaustive = h.n <= EXHAUSTIVE_CUTS
    cuts = [Cut.from_int(c, h.n) for c in range(1 << h.n)] if exhaustive else \
        [_random_cut(rng, h.n) for _ in range(samples)]
    tag = f"k={k}"

    with rep.check(f"reduction-bijection[{tag}]", "cuts and standard tours correspond one-to-one") as w:
        seen = set()
        for c in cuts:
            t = R.standard_tour_from_cut(red, c).tour
            if R.cut_from_standard_tour(red, t) != c:
                w.append(f"round trip fails for {c.to_int()}")
            seen.add(t)
        if len(seen) != len(set(cuts)):
            w.append("two cuts share a standard tour")

    with rep.check(f"reduction-weights[{tag}]", "tour weight plus cut value is zero") as w:
        for c in cuts:
            t = R.standard_tour_from_cut(red, c).tour
            s = red.weight(t) + cut_value(h, c)
            if s != 0:
                w.append(f"cut {c.to_int()}: sum {s}")

    with rep.check(f"reduction-neighbours[{tag}]", "one flip apart iff the standard tours differ by a k-swap") as w:
        if exhaustive:
            pairs = list(combinations(cuts, 2))
        else:
            pairs = [(c, apply_flip(c, rng.randrange(h.n))) for c in cuts]
            pairs += [(c, _random_cut(rng, h.n)) for c in cuts]
        for a, b in pairs:
            ta = R.standard_tour_from_cut(red, a).tour
            tb = R.standard_tour_from_cut(red, b).tour
            dist = sum(x != y for x, y in zip(a.assignment, b.assignment))
            size = len(ta.edges - tb.edges)
            if dist == 1 and size != k:
                w.append(f"{a.to_int()}->{b.to_int()}: one flip but a {size}-swap")
            if dist > 1 and size <= k:
                w.append(f"{a.to_int()}->{b.to_int()}: {dist} flips but a {size}-swap")

    if closure_tours:
        with rep.check(f"reduction-closure[{tag}]", "every <=4-swap from a standard tour stays standard") as w:
            ti = red.instance
            if red.graph.n <= EXHAUSTIVE_CLOSURE_VERTICES and exhaustive:
                starts = cuts
            else:
                starts = [_random_cut(rng, h.n) for _ in range(closure_tours)]
            for c in starts:
                t = R.standard_tour_from_cut(red, c).tour
                for sw, _ in enumerate_swaps(ti, t, KSpec(4), improving_only=False):
                    v = R.is_standard(red, apply_swap(t, sw))
                    if isinstance(v, R.NotStandard):
                        w.append(f"{sw.size}-swap leaves the standard tours: {v}")
    return rep


def verify_reduction(n: int, p: int, k, samples: int = 100, closure_tours: int | None = None,
                     seed: int = 1) -> Report:
    """Closure starts from every standard tour on tiny instances and from
    ``closure_tours`` (default ``samples``) random ones otherwise."""
    ks = str(k)
    if n < 1 or n > 3:
        raise InfeasibleScale("reductions are checked for 1 <= n <= 3")
    rep = Report()
    if ks == "2.5":
        return verify_reduction_25(n, p, rep)
    k = int(ks)
    inst = MS.build_h_np(n, p)
    cover = MS.canonical_cover(n, p, inst)
    red = None
    with rep.check(f"reduction-build[k={k}]", "construction is simple and attaches every vertex twice"):
        red = R.build_reduction(inst.graph, cover, k)
    if red is None:
        return rep
    return check_reduction_instance(rep, red, samples, seed, samples if closure_tours is None else closure_tours)


def verify_reduction_25(n: int, p: int, rep: Report | None = None,
                        pivots: Sequence[PivotRule] = (PivotRule.steepest(),)) -> Report:
    rep = rep or Report()
    red = None
    with rep.check("r25-build", "2.5 construction is simple, stars partition H") as w:
        red = R25.build_reduction_25(n, p)
        R25.check_simple(red)
        if R25.star_kind_counts(red).get("s4", 0) != n:
            w.append("star-4 count differs from n")
    if red is None:
        return rep
    tau0 = None
    with rep.check("r25-initial-tour", "initial tour is standard and maps to the initial cut") as w:
        tau0 = R25.initial_tour_tau0(red)
    if tau0 is None:
        return rep
    for piv in pivots:
        with rep.check(f"r25-run[{piv}]", "2.5-opt run stays standard, in band, with progress and flip steps") as w:
            res = check_run_25(red, tau0, piv)
            w.extend(res["problems"])
            fl = run_flip(red.h, red.h_instance.initial_cut, piv)
            if res["swaps"] < len(fl):
                w.append(f"run length {res['swaps']} below flip length {len(fl)}")
    return rep


def check_run_25(red: R25.Reduction25Artifacts, tau0: Tour, pivot: PivotRule, step_limit: int | None = None) -> dict:
    h = red.h
    lo = -red.n * red.eps_tilde
    problems: list[str] = []
    cuts: list[Cut] = []
    flips: list[int] = []

    def obs(tour: Tour, moves) -> None:
        v = R25.is_standard_25(red, tour)
        if isinstance(v, R.NotStandard):
            problems.append(f"step {len(cuts)}: {v}")
            return
        c = R25.phi_from_view(red, v)
        s = red.weight(tour) + cut_value(h, c)
        if not lo <= s <= 0:
            problems.append(f"weight band violated: {s}")
        improving = [x for x in range(h.n) if flip_gain(h, c, x) > 0]
        if improving and not moves:
            problems.append("improving flip exists but no improving 2.5-swap")
        if cuts and cuts[-1] != c:
            diff = [i for i in range(h.n) if cuts[-1][i] != c[i]]
            if len(diff) != 1:
                problems.append(f"image changed by {len(diff)} flips")
            elif flip_gain(h, cuts[-1], diff[0]) <= 0:
                problems.append(f"flip of {h.label(diff[0])} is not improving")
            else:
                flips.append(diff[0])
        cuts.append(c)

    tr = run_kopt(red.instance, tau0, KSpec(3, True), pivot, step_limit, on_step=obs)
    return {"swaps": len(tr), "flips": flips, "problems": problems, "trace": tr}


# ---------------------------------------------------------------------------
# scaling


def flip_lengths(n_values: Sequence[int], p: int, pivots: Sequence[PivotRule], primed: bool = True) -> list[dict]:
    rows = []

    def one(args):
        n, piv = args
        inst = (MS.build_h_prime_np if primed else MS.build_h_np)(n, p)
        tr = run_flip(inst.graph, inst.initial_cut, piv)
        sub = set(inst.subdivision_vertices)
        proj = [inst.name(v) for v in tr.vertices if v not in sub]
        return {"n": n, "p": p, "pivot": str(piv), "flip_length": len(tr),
                "projected_ok": proj == MS.predict_flip_projection(n, p), "trace": tr, "instance": inst}

    jobs = [(n, piv) for n in n_values for piv in pivots]
    with ThreadPoolExecutor(max_workers=threads()) as ex:
        rows = list(ex.map(one, jobs))
    return rows


def pi_violations(inst: MS.MSInstance, trace) -> list[str]:
    out = []
    for i in range(1, inst.n + 1):
        quad = inst.quadruple(i)
        state = MS.quadruple_state(inst, inst.initial_cut, i)
        for step, v in enumerate(trace.vertices):
            if v in quad:
                cut_after = list(state)
                cut_after[quad.index(v)] ^= 1
                new = tuple(cut_after)
                try:
                    if MS.pi_successor(state) != new:
                        out.append(f"level {i} step {step}: {state} -> {new}")
                except MS.OffCycle as exc:
                    out.append(str(exc))
                state = new
    return out


def verify_scaling(n_values: Sequence[int], p: int, k, pivots: Sequence[PivotRule]) -> Report:
    if max(n_values) > 5:
        raise InfeasibleScale("flip runs are checked up to n = 5")
    rep = Report()
    ks = None if k in (None, "flip") else str(k)
    primed = ks in (None, "2.5")
    rows = flip_lengths(n_values, p, pivots, primed)
    by_piv: dict[str, dict[int, int]] = {}
    for r in rows:
        by_piv.setdefault(r["pivot"], {})[r["n"]] = r["flip_length"]
    with rep.check("flip-projection", "projected flip order equals the predicted sequence") as w:
        for r in rows:
            if not r["projected_ok"]:
                w.append(f"n={r['n']} {r['pivot']}")
    with rep.check("flip-cycle-states", "quadruple states follow the 12-state cycle") as w:
        for r in rows:
            w.extend(pi_violations(r["instance"], r["trace"]))
    with rep.check("flip-growth", "len(n)/len(n-1) lies in [2.5, 3.5]") as w:
        for piv, d in by_piv.items():
            for n in sorted(d):
                if n - 1 in d and n >= 2:
                    ratio = Fraction(d[n], d[n - 1])
                    if not Fraction(5, 2) <= ratio <= Fraction(7, 2):
                        w.append(f"{piv}: n={n} ratio {float(ratio):.3f} ({d[n]}/{d[n - 1]})")
    for r in rows:
        rep.rows.append({"n": r["n"], "p": p, "k": ks or "flip", "pivot": r["pivot"], "flip_length": r["flip_length"],
                         "kopt_length": "", "all_standard": ""})
    if ks is None:
        return rep
    if max(n_values) > 3:
        raise InfeasibleScale("k-opt runs are checked up to n = 3")
    with rep.check(f"kopt-lengths[k={ks}]", "k-opt run length versus flip length") as w:
        for row in rep.rows:
            n = row["n"]
            piv = next(x for x in pivots if str(x) == row["pivot"])
            if ks == "2.5":
                red25 = R25.build_reduction_25(n, p)
                res = check_run_25(red25, R25.initial_tour_tau0(red25), piv)
                row["kopt_length"] = res["swaps"]
                row["all_standard"] = not res["problems"]
                w.extend(res["problems"][:3])
                if res["swaps"] < row["flip_length"]:
                    w.append(f"n={n} {piv}: {res['swaps']} < {row['flip_length']}")
            else:
                inst = MS.build_h_np(n, p)
                red = R.build_reduction(inst.graph, MS.canonical_cover(n, p, inst), int(ks))
                tr, std = kopt_standard_run(red, inst.initial_cut, KSpec(int(ks)), piv)
                row["kopt_length"] = len(tr)
                row["all_standard"] = std
                if not std:
                    w.append(f"n={n} {piv}: non-standard tour visited")
                if len(tr) != row["flip_length"]:
                    w.append(f"n={n} {piv}: {len(tr)} != {row['flip_length']}")
    return rep


def kopt_standard_run(red: R.ReductionArtifacts, cut: Cut, kspec: KSpec, pivot: PivotRule):
    ok = [True]

    def obs(tour, moves):
        if isinstance(R.is_standard(red, tour), R.NotStandard):
            ok[0] = False

    tr = run_kopt(red.instance, R.standard_tour_from_cut(red, cut).tour, kspec, pivot, on_step=obs)
    return tr, ok[0]


# ---------------------------------------------------------------------------
# mutations


def _path_sigma_misplaced(orig):
    def f(t, sigma=(), delta=()):
        g = orig(t, sigma, delta)
        if t != 2:
            return g
        return orig(t, list(delta), list(sigma))
    return f


def _path3_drop_edge(orig):
    def f(t, sigma=(), delta=()):
        g = orig(t, sigma, delta)
        if t != 3:
            return g
        keep = [(g.names[u], g.names[v], w) for u, v, w in g.edges if {g.names[u], g.names[v]} != {"Xb1", "X3"}]
        return G._finish(g.kind, g.family, g.names, dict(zip(g.names, g.roles)),
                         [tuple(g.names[i] for i in s) for s in g.sides], keep, dict(g.params))
    return f


def _star4_sign(orig):
    def f(kind, sigma=(), delta=(), eps_tilde=None):
        g = orig(kind, sigma, delta, eps_tilde)
        if kind != "s4":
            return g
        es = [(g.names[u], g.names[v], -w if {g.names[u], g.names[v]} == {"X1", "X3"} else w) for u, v, w in g.edges]
        return G._finish(g.kind, g.family, g.names, dict(zip(g.names, g.roles)),
                         [tuple(g.names[i] for i in s) for s in g.sides], es, dict(g.params))
    return f


def _star3_swapped_portal(orig):
    def f(kind, sigma=(), delta=(), eps_tilde=None):
        g = orig(kind, sigma, delta, eps_tilde)
        if kind != "s3":
            return g
        swap = {"X2": "Xb2", "Xb2": "X2"}
        es = [(swap.get(g.names[u], g.names[u]), swap.get(g.names[v], g.names[v]), w) for u, v, w in g.edges]
        return G._finish(g.kind, g.family, g.names, dict(zip(g.names, g.roles)),
                         [tuple(g.names[i] for i in s) for s in g.sides], es, dict(g.params))
    return f


def _xor_missing_rung(orig):
    def f(kind, q=None):
        g = orig(kind, q)
        if kind != "xor":
            return g
        es = [(g.names[u], g.names[v], w) for u, v, w in g.edges if {g.names[u], g.names[v]} != {"a2", "m2"}]
        es.append(("a2", "b2", Fraction(0)))
        return G._finish(g.kind, g.family, g.names, dict(zip(g.names, g.roles)),
                         [tuple(g.names[i] for i in s) for s in g.sides], es, dict(g.params))
    return f


def _reduction_sign(orig):
    def f(labels, weights, centre):
        s, d = orig(labels, weights, centre)
        return [-x for x in s], [-x for x in d]
    return f


def _reduction_same_side(orig):
    def f(k):
        g = orig(k)
        first = tuple(g.names[i] for i in g.sides[0])
        sides = [first] * len(g.sides)
        return G._finish(g.kind, g.family, g.names, dict(zip(g.names, g.roles)), sides,
                         [(g.names[u], g.names[v], w) for u, v, w in g.edges], dict(g.params))
    return f


def _ms_subdivision_reversed(orig):
    def f(n, p, subdivided, eps, scheme):
        inst = orig(n, p, subdivided, eps, scheme)
        g = inst.graph
        ws = g.weights()
        for x in inst.subdivision_vertices:
            a, b = (edge_key(x, y) for y in g.neighbors(x))
            ws[a], ws[b] = ws[b], ws[a]
        return MS.MSInstance(WeightedGraph(g.labels, ws), inst.initial_cut, n, p, inst.eps, subdivided)
    return f


def _ms_eps_zero(orig):
    def f(n, p, subdivided, eps, scheme):
        return orig(n, p, subdivided, Fraction(0), scheme)
    return f


def _r25_pairing_shift(orig):
    def f(n):
        seq = orig(n)
        return seq[1:] + seq[:1]
    return f


@dataclass(frozen=True)
class Mutation:
    name: str
    target: str
    wrap: Callable
    suite: str  # "gadgets" | "reduction" | "flip" | "r25"


MUTATIONS: tuple[Mutation, ...] = (
    Mutation("path2-sigma-delta-swapped", "kopt_adversary.gadgets.make_path_gadget", _path_sigma_misplaced, "gadgets"),
    Mutation("path3-edge-dropped", "kopt_adversary.gadgets.make_path_gadget", _path3_drop_edge, "gadgets"),
    Mutation("star4-weight-sign", "kopt_adversary.gadgets.make_star_gadget", _star4_sign, "gadgets"),
    Mutation("star3-portal-swapped", "kopt_adversary.gadgets.make_star_gadget", _star3_swapped_portal, "gadgets"),
    Mutation("xor-rung-rewired", "kopt_adversary.gadgets.make_vertex_gadget", _xor_missing_rung, "gadgets"),
    Mutation("reduction-weight-sign", "kopt_adversary.reduction.sigma_delta", _reduction_sign, "reduction"),
    Mutation("reduction-pv-same-side", "kopt_adversary.reduction.vertex_gadget_for_k", _reduction_same_side,
             "reduction"),
    Mutation("subdivision-relay-reversed", "kopt_adversary.ms_family._build", _ms_subdivision_reversed, "flip"),
    Mutation("flip-tiebreak-eps-zero", "kopt_adversary.ms_family._build", _ms_eps_zero, "flip"),
    Mutation("pp-pairing-shifted", "kopt_adversary.reduction25.e_sequence", _r25_pairing_shift, "r25"),
)


def _suite(name: str) -> Report:
    if name == "gadgets":
        return verify_gadget_lemmas(draws=2)
    if name == "reduction":
        rep = Report()
        for k in (3, 4, 5):
            h, cover = R.single_edge_h(3)
            red = None
            with rep.check(f"toy-build[k={k}]", "construction builds"):
                red = R.build_reduction(h, cover, k)
            if red is not None:
                check_reduction_instance(rep, red)
        return rep
    if name == "flip":
        return verify_scaling([1, 2], 7, "flip", [PivotRule.steepest()])
    return verify_reduction_25(1, 7)


_BASELINE: dict[str, frozenset[str]] = {}


def _failing(rep: Report) -> frozenset[str]:
    return frozenset(c.claim_id for c in rep.failed())


def run_mutation(m: Mutation) -> tuple[bool, Report]:
    """Run the mutation's suite under the patch.

    The mutation counts as caught when some claim that passes on the
    unmodified code fails; claims that fail anyway do not count.
    """
    if m.suite not in _BASELINE:
        _BASELINE[m.suite] = _failing(_suite(m.suite))
    mod_name, attr = m.target.rsplit(".", 1)
    mod = importlib.import_module(mod_name)
    with mock.patch.object(mod, attr, m.wrap(getattr(mod, attr))):
        rep = _suite(m.suite)
    return bool(_failing(rep) - _BASELINE[m.suite]), rep


def verify_mutations(names: Sequence[str] | None = None) -> Report:
    rep = Report()
    for m in MUTATIONS:
        if names and m.name not in names:
            continue
        with rep.check(f"mutation[{m.name}]", "a broken construction is rejected") as w:
            caught, sub = run_mutation(m)
            if not caught:
                w.append("no check failed")
        rep.rows.append({"mutation": m.name, "caught": caught,
                         "failing": " ".join(sorted(_failing(sub) - _BASELINE[m.suite]))})
    return rep
