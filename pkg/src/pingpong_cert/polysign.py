"""Eventual-sign analysis of matrix polynomials in an integer variable.

A :class:`PolyMatrix` stands for ``n -> sum_i n**i * C_i``.  For each entry
the sign far out in one direction is the sign of its leading coefficient
(corrected by ``(-1)**deg`` towards -infinity), and the Cauchy root bound
gives an explicit point past which no entry changes sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Sequence

from .exactlin import Mat, SignPattern

PLUS_INF = "+inf"
MINUS_INF = "-inf"
DIRECTIONS = (PLUS_INF, MINUS_INF)


@dataclass(frozen=True)
class PolyMatrix:
    """Matrix polynomial with coefficients C_0, C_1, ... (constant first)."""

    coeffs: tuple[Mat, ...]

    def __init__(self, coeffs: Sequence[Mat]):
        coeffs = list(coeffs)
        if not coeffs:
            raise ValueError("PolyMatrix needs at least one coefficient")
        dim = coeffs[0].dim
        if any(c.dim != dim for c in coeffs):
            raise ValueError("coefficient matrices must share a dimension")
        while len(coeffs) > 1 and coeffs[-1].is_zero():
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @property
    def dim(self) -> int:
        return self.coeffs[0].dim

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def entry_poly(self, i: int, j: int) -> list[Fraction]:
        return [c[i, j] for c in self.coeffs]

    def reflected(self) -> "PolyMatrix":
        """The polynomial n -> P(-n)."""
        return PolyMatrix([c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)])


def evaluate(p: PolyMatrix, n: int) -> Mat:
    """Horner evaluation at an integer (or rational) point."""
    acc = p.coeffs[-1]
    for c in reversed(p.coeffs[:-1]):
        acc = acc.scale(n) + c
    return acc


@dataclass(frozen=True)
class EventualSignReport:
    """Signs of P(n) for every n >= threshold (or n <= -threshold)."""

    direction: str
    signs: SignPattern
    threshold: int


def _entry_sign_and_bound(poly: Sequence[Fraction]) -> tuple[int, int]:
    e = max((i for i, c in enumerate(poly) if c), default=None)
    if e is None:
        return 0, 1
    lead = poly[e]
    sign = 1 if lead > 0 else -1
    if e == 0:
        return sign, 1
    ratio = max(abs(poly[i] / lead) for i in range(e))
    return sign, ceil(1 + ratio) + 1


def eventual_signs(p: PolyMatrix, direction: str) -> EventualSignReport:
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}")
    q = p if direction == PLUS_INF else p.reflected()
    n = p.dim
    threshold = 1
    signs = []
    for i in range(n):
        row = []
        for j in range(n):
            s, bound = _entry_sign_and_bound(q.entry_poly(i, j))
            row.append(s)
            threshold = max(threshold, bound)
        signs.append(tuple(row))
    return EventualSignReport(direction, SignPattern(tuple(signs)), threshold)


def sample_points(report: EventualSignReport) -> list[int]:
    """Points beyond the threshold used for spot-checking soundness."""
    t = report.threshold
    pts = [t, t + 1, t + 7, 10 * t]
    return pts if report.direction == PLUS_INF else [-x for x in pts]
