import functools

import pytest

from kopt_adversary import ms_family as MS
from kopt_adversary import reduction as R
from kopt_adversary import reduction25 as R25


@functools.lru_cache(maxsize=None)
def h_instance(n, p):
    return MS.build_h_np(n, p)


@functools.lru_cache(maxsize=None)
def hprime_instance(n, p):
    return MS.build_h_prime_np(n, p)


@functools.lru_cache(maxsize=None)
def reduction(n, p, k):
    inst = h_instance(n, p)
    return R.build_reduction(inst.graph, MS.canonical_cover(n, p, inst), k)


@functools.lru_cache(maxsize=None)
def reduction25(n, p):
    return R25.build_reduction_25(n, p)


@pytest.fixture(scope="session")
def red_1_15():
    return {k: reduction(1, 15, k) for k in (3, 4, 5)}


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
