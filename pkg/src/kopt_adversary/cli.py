"""Command-line frontend: ``gen``, ``run``, ``verify`` and ``report``.

Exit codes: 0 success, 1 a check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import ms_family as MS
from . import reduction as R
from . import reduction25 as R25
from . import verify as V
from .core import PreconditionViolation
from .kopt import KSpec, TSPInstance, run_kopt
from .maxcut import run_flip
from .pivots import PivotRule
from .serialize import (cut_from_json, cut_to_json, graph_from_json, graph_to_json, rational_from_json,
                        rational_to_json, tour_from_json, tour_to_json)

FORMAT_VERSION = 1
TSPLIB_LIMIT = 1 << 62


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_help(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# instance files


def maxcut_document(inst: MS.MSInstance, family: str) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "maxcut",
        "graph": graph_to_json(inst.graph),
        "initial": {"cut": cut_to_json(inst.initial_cut)},
        "params": {"family": family, "n": inst.n, "p": inst.p, "eps": rational_to_json(inst.eps)},
        "index": {lab: i for i, lab in enumerate(inst.graph.labels)},
    }


def _registry(gadgets) -> list[dict]:
    return [{"gid": pg.gid, "kind": pg.gadget.kind, "owner": [str(x) for x in pg.owner],
             "vertices": {name: v for name, v in zip(pg.gadget.names, pg.vmap)}} for pg in gadgets]


def tsp_document(k: str, n: int, p: int):
    if k == "2.5":
        red = R25.build_reduction_25(n, p)
        start = R25.initial_tour_tau0(red)
        extra = {"eps_tilde": rational_to_json(red.eps_tilde)}
    else:
        inst = MS.build_h_np(n, p)
        red = R.build_reduction(inst.graph, MS.canonical_cover(n, p, inst), int(k))
        start = R.standard_tour_from_cut(red, inst.initial_cut).tour
        extra = {}
    doc = {
        "format_version": FORMAT_VERSION,
        "kind": "tsp",
        "graph": graph_to_json(red.graph),
        "big_m": rational_to_json(red.big_m),
        "initial": {"tour": tour_to_json(start), "start": "tau0" if k == "2.5" else "standard"},
        "params": {"k": k, "n": n, "p": p, **extra},
        "registry": _registry(red.gadgets),
    }
    return doc, red


def tsplib_text(name: str, inst: TSPInstance) -> str:
    mat, scale = inst.dense()
    if max(abs(int(x)) for x in mat.flat) > TSPLIB_LIMIT:
        raise PreconditionViolation("scaled weights exceed 2^62; TSPLIB export refused")
    lines = [f"NAME: {name}", "TYPE: TSP", f"COMMENT: derived from JSON; weights scaled by {scale}",
             f"DIMENSION: {inst.graph.n}", "EDGE_WEIGHT_TYPE: EXPLICIT", "EDGE_WEIGHT_FORMAT: FULL_MATRIX",
             "EDGE_WEIGHT_SECTION"]
    lines += [" ".join(str(int(x)) for x in row) for row in mat]
    lines.append("EOF")
    return "\n".join(lines) + "\n"


def load_document(path: str, kind: str) -> dict:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    if doc.get("format_version") != FORMAT_VERSION or doc.get("kind") != kind:
        raise UsageError(f"{path} is not a version-{FORMAT_VERSION} {kind} instance")
    return doc


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


# ---------------------------------------------------------------------------
# argument helpers


def parse_pivot(text: str, seed: int = 0) -> PivotRule:
    if text.startswith("random"):
        rest = text[len("random"):].strip(":()")
        return PivotRule.random(int(rest) if rest else seed)
    if text in ("first", "steepest"):
        return PivotRule(text)
    raise UsageError(f"unknown pivot {text!r}")


def parse_pivots(text: str, seed: int = 0) -> list[PivotRule]:
    return [parse_pivot(x.strip(), seed) for x in text.split(",") if x.strip()]


def parse_range(text: str) -> list[int]:
    if ".." in text:
        a, b = text.split("..")
        return list(range(int(a), int(b) + 1))
    return [int(x) for x in text.split(",")]


def _k_text(text: str) -> str:
    KSpec.parse(text)
    return str(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_gen_maxcut(a) -> int:
    fam = {"h": "hnp", "hnp": "hnp", "hprime": "hprime"}[a.family]
    inst = (MS.build_h_np if fam == "hnp" else MS.build_h_prime_np)(a.n, a.p)
    _write(a.out, json.dumps(maxcut_document(inst, fam), indent=1) + "\n")
    return 0


def cmd_gen_tsp(a) -> int:
    doc, red = tsp_document(a.k, a.n, a.p)
    _write(a.out, json.dumps(doc, indent=1) + "\n")
    if a.tsplib:
        Path(a.tsplib).write_text(tsplib_text(f"kopt_k{a.k}_n{a.n}_p{a.p}", red.instance))
    return 0


def cmd_run_flip(a) -> int:
    doc = load_document(a.instance, "maxcut")
    g = graph_from_json(doc["graph"])
    cut = cut_from_json(doc["initial"]["cut"])
    tr = run_flip(g, cut, parse_pivot(a.pivot, a.seed), a.max_steps)
    if a.trace:
        Path(a.trace).write_text(tr.to_csv())
    print(json.dumps({"steps": len(tr), "termination": tr.termination, "final_value": str(tr.final_value)}))
    return 0


def cmd_run_kopt(a) -> int:
    doc = load_document(a.instance, "tsp")
    inst = TSPInstance(graph_from_json(doc["graph"]), rational_from_json(doc["big_m"]))
    if a.start in ("standard", "tau0"):
        if doc["initial"]["start"] != a.start:
            raise UsageError(f"instance provides a {doc['initial']['start']} start, not {a.start}")
        tour = tour_from_json(doc["initial"]["tour"])
    else:
        try:
            tour = tour_from_json(json.loads(Path(a.start).read_text()))
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot read start tour {a.start}: {exc}") from exc
    if tour.n != inst.graph.n:
        raise UsageError("start tour does not match the instance size")
    tr = run_kopt(inst, tour, KSpec.parse(a.k), parse_pivot(a.pivot, a.seed), a.max_steps)
    if a.trace:
        Path(a.trace).write_text(tr.to_csv())
    print(json.dumps({"steps": len(tr), "termination": tr.termination, "final_weight": str(tr.final_weight)}))
    return 0


def cmd_verify(a) -> int:
    if a.what == "gadgets":
        rep = V.verify_gadget_lemmas()
    elif a.what == "mutations":
        rep = V.verify_mutations()
    elif a.what == "reduction":
        rep = V.verify_reduction(a.n[0], a.p, a.k, samples=a.samples)
    else:
        rep = V.verify_scaling(a.n, a.p, a.k, parse_pivots(a.pivots, a.seed))
    for c in rep.claims:
        line = f"{c.status.upper():4} {c.claim_id}  ({c.runtime:.2f}s)"
        print(line if c.status == "pass" else f"{line}  {c.witness}")
    if a.report:
        Path(a.report).write_text(rep.to_json() + "\n")
    return 0 if rep.ok else 1


def cmd_report_scaling(a) -> int:
    rep = V.verify_scaling(a.n, a.p, a.k, parse_pivots(a.pivots, a.seed))
    _write(a.out, rep.rows_csv())
    for c in rep.failed():
        print(f"FAIL {c.claim_id}  {c.witness}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kopt-adversary", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen").add_subparsers(dest="what", required=True, parser_class=_Parser)
    g = gen.add_parser("maxcut")
    g.add_argument("--family", choices=("h", "hnp", "hprime"), required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen_maxcut)
    g = gen.add_parser("tsp")
    g.add_argument("--k", type=_k_text, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--out")
    g.add_argument("--tsplib")
    g.set_defaults(func=cmd_gen_tsp)

    run = sub.add_parser("run").add_subparsers(dest="what", required=True, parser_class=_Parser)
    for name, fn in (("flip", cmd_run_flip), ("kopt", cmd_run_kopt)):
        r = run.add_parser(name)
        r.add_argument("--instance", required=True)
        r.add_argument("--pivot", default="steepest")
        r.add_argument("--seed", type=int, default=0)
        r.add_argument("--max-steps", type=int)
        r.add_argument("--trace")
        if name == "kopt":
            r.add_argument("--k", type=_k_text, required=True)
            r.add_argument("--start", default="standard")
        r.set_defaults(func=fn)

    ver = sub.add_parser("verify")
    ver.add_argument("what", choices=("gadgets", "reduction", "scaling", "mutations"))
    _scale_args(ver, k_default="3")
    ver.add_argument("--samples", type=int, default=100)
    ver.add_argument("--report")
    ver.set_defaults(func=cmd_verify)

    rep = sub.add_parser("report")
    rep.add_argument("what", choices=("scaling",))
    _scale_args(rep, k_default="flip")
    rep.add_argument("--out")
    rep.set_defaults(func=cmd_report_scaling)
    return p


def _scale_args(p: argparse.ArgumentParser, k_default: str) -> None:
    p.add_argument("--n", type=parse_range, default=[1])
    p.add_argument("--p", type=int, default=15)
    p.add_argument("--k", default=k_default)
    p.add_argument("--pivots", default="steepest")
    p.add_argument("--seed", type=int, default=0)


def run_cli(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help
        return 0 if exc.code in (0, None) else 2
    except (PreconditionViolation, V.InfeasibleScale, MS.InvalidParams, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_cli())
