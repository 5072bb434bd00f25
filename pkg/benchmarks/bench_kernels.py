"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3]

Both backends must produce identical traces; the script exits 1 otherwise.
"""

from __future__ import annotations

import argparse
import sys
import time

from kopt_adversary import kernels
from kopt_adversary import ms_family as MS
from kopt_adversary import reduction as R
from kopt_adversary.kopt import KSpec, run_kopt
from kopt_adversary.maxcut import run_flip
from kopt_adversary.pivots import PivotRule


def _time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def cases():
    for n in (3, 4, 5):
        inst = MS.build_h_prime_np(n, 7)
        yield f"flip H'_{{{n},7}}", lambda impl, i=inst: [s.vertex for s in
                                                           run_flip(i.graph, i.initial_cut, PivotRule(), impl=impl).steps]
    for k in (3, 4):
        h = MS.build_h_np(1, 15)
        red = R.build_reduction(h.graph, MS.canonical_cover(1, 15, h), k)
        ti = red.instance
        start = R.standard_tour_from_cut(red, h.initial_cut).tour
        yield f"{k}-opt H_{{1,15}}", lambda impl, t=ti, s=start, k=k: [st.swap for st in
                                                                       run_kopt(t, s, KSpec(k), impl=impl).steps]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    a = ap.parse_args(argv)
    if kernels.c_impl is None:
        print("compiled extension unavailable; only the fallback can run")
        return 1
    print(f"{'case':22} {'compiled s':>11} {'python s':>10} {'speedup':>8}")
    ok = True
    for name, fn in cases():
        tc, rc = _time(lambda: fn(kernels.c_impl), a.repeat)
        tp, rp = _time(lambda: fn(kernels.py_impl), a.repeat)
        ok &= rc == rp
        print(f"{name:22} {tc:11.4f} {tp:10.4f} {tp / tc:8.1f}{'' if rc == rp else '  MISMATCH'}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
