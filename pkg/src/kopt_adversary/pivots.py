"""Pivot rules and the portable random generator shared by both engines."""

from __future__ import annotations

from dataclasses import dataclass

MASK64 = (1 << 64) - 1
# Used when a seed is 0, which is a fixed point of xorshift.
ZERO_SEED_REPLACEMENT = 0x9E3779B97F4A7C15

KINDS = ("first", "steepest", "random")


def seed_state(seed: int) -> int:
    s = seed & MASK64
    return s if s else ZERO_SEED_REPLACEMENT


class XorShift64:
    """Marsaglia xorshift64 with shifts (13, 7, 17).

    ``next()`` advances the state and returns it; ``index(n)`` returns
    ``next() % n``.  The modulo bias is below 2^-50 for the list sizes used
    here and is accepted for portability.
    """

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed_state(seed)

    def next(self) -> int:
        x = self.state
        x ^= (x << 13) & MASK64
        x ^= x >> 7
        x ^= (x << 17) & MASK64
        self.state = x
        return x

    def index(self, n: int) -> int:
        if n <= 0:
            raise ValueError("empty choice")
        return self.next() % n


@dataclass(frozen=True)
class PivotRule:
    kind: str = "steepest"
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown pivot kind {self.kind!r}; expected one of {KINDS}")

    @classmethod
    def first(cls) -> "PivotRule":
        return cls("first")

    @classmethod
    def steepest(cls) -> "PivotRule":
        return cls("steepest")

    @classmethod
    def random(cls, seed: int) -> "PivotRule":
        return cls("random", seed)

    @property
    def code(self) -> int:
        return KINDS.index(self.kind)

    def __str__(self) -> str:
        return f"random({self.seed})" if self.kind == "random" else self.kind


def choose(pivot: PivotRule, gains: list, rng: XorShift64 | None) -> int:
    """Index into a candidate list ordered by move index.

    ``gains`` holds each candidate's improvement (larger is better); ties in
    steepest mode go to the lowest index.
    """
    if not gains:
        raise ValueError("no candidates")
    if pivot.kind == "first":
        return 0
    if pivot.kind == "steepest":
        best = 0
        for i in range(1, len(gains)):
            if gains[i] > gains[best]:
                best = i
        return best
    assert rng is not None
    return rng.index(len(gains))
