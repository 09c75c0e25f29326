"""
Sum / Sum-of-Squares Enumeration

Enumerates the nonincreasing nonnegative integer tuples (C_1 >= ... >= C_L)
with a prescribed sum and sum of squares.
"""

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class CSystem:
    """The system  sum(C) = total,  sum(C^2) = square_total  over L entries."""
    length: int
    total: int
    square_total: int

    def __post_init__(self):
        if self.length < 1:
            raise ValueError(f"length must be >= 1, got {self.length}")
        if self.total < 0 or self.square_total < 0:
            raise ValueError(f"targets must be nonnegative, got ({self.total}, {self.square_total})")

    @property
    def satisfies_cauchy_schwarz(self) -> bool:
        """L * S2 >= S1^2, necessary for any real solution."""
        return self.length * self.square_total >= self.total ** 2

    @property
    def parity_consistent(self) -> bool:
        """c^2 = c (mod 2), so S2 and S1 have the same parity."""
        return (self.square_total - self.total) % 2 == 0

    def is_solution(self, values: tuple[int, ...]) -> bool:
        return (
            len(values) == self.length
            and all(c >= 0 for c in values)
            and sum(values) == self.total
            and sum(c * c for c in values) == self.square_total
        )


def enumerate_solutions(system: CSystem) -> list[tuple[int, ...]]:
    """
    All nonincreasing solutions, lexicographically descending.

    Backtracks over positions choosing the largest value first. A branch
    with ``slots`` positions left, residual sum ``s`` and residual square sum
    ``q``, and next value at most ``c`` is feasible only if

      s <= slots * c,   slots * q >= s^2,   q <= c * s,

    which never discards a valid completion.
    """
    if not (system.satisfies_cauchy_schwarz and system.parity_consistent):
        return []

    solutions: list[tuple[int, ...]] = []
    prefix: list[int] = []

    def extend(slots: int, rest: int, rest_sq: int, cap: int) -> None:
        if slots == 0:
            if rest == 0 and rest_sq == 0:
                solutions.append(tuple(prefix))
            return
        upper = min(cap, rest, math.isqrt(rest_sq))
        for c in range(upper, -1, -1):
            s = rest - c
            q = rest_sq - c * c
            left = slots - 1
            if s > left * c:
                # smaller c only makes this worse
                break
            if left * q < s * s or q > c * s:
                continue
            prefix.append(c)
            extend(left, s, q, c)
            prefix.pop()

    extend(system.length, system.total, system.square_total, system.total)
    return solutions
