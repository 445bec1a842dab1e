"""The three matrix predicates that discharge the ping-pong hypotheses.

Every predicate is checked for all j != 0 by splitting j = p*n + k.  Far out
in n the signs of ``M^-1 L R^(p n + k) S`` are frozen (eventual-sign report);
the finitely many remaining j are checked with exact powers of R.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Iterator

from ..errors import ExplicitRangeExceeded
from ..exactlin import Mat, SignPattern, mat_pow, sign_pattern
from ..polysign import DIRECTIONS, MINUS_INF, PLUS_INF, EventualSignReport, PolyMatrix, eventual_signs
from .normal_form import DerivedData

A1, C1, C3 = "A1", "C1", "C3"
LEFT_I, LEFT_T_INV = "I", "T^-1"
SIDE_M, SIDE_N = "M", "N"
SIDES = (SIDE_M, SIDE_N)
SMALL_J = (1, -1, 2, -2, 3, -3)


# --------------------------------------------------------------------------
# predicates on sign patterns
#
# Zero rows are rejected: with M, N invertible no conjugate has one, and the
# cone arguments need each row to be strictly signed on positive vectors.


def has_mixed_rows(sp: SignPattern) -> bool:
    """Some nonzero row is non-negative and some nonzero row is non-positive."""
    rows = range(sp.dim)
    pos = any(sp.row_nonnegative(r) and not sp.row_zero(r) for r in rows)
    neg = any(sp.row_nonpositive(r) and not sp.row_zero(r) for r in rows)
    return pos and neg


def is_signed(sp: SignPattern) -> bool:
    """Entrywise non-negative or entrywise non-positive, without zero rows."""
    return (sp.is_nonnegative() or sp.is_nonpositive()) and not sp.has_zero_row()


def is_nonnegative_cone_map(sp: SignPattern) -> bool:
    return sp.is_nonnegative() and not sp.has_zero_row()


PREDICATES: dict[str, Callable[[SignPattern], bool]] = {A1: has_mixed_rows, C3: is_signed}
LEFT_FOR = {A1: LEFT_I, C3: LEFT_T_INV}


# --------------------------------------------------------------------------
# power families


def left_matrix(d: DerivedData, left: str) -> Mat:
    if left == LEFT_I:
        return Mat.identity(d.R.dim)
    if left == LEFT_T_INV:
        return d.T_inv
    raise ValueError(f"unknown left factor {left!r}")


def side_matrix(d: DerivedData, side: str) -> Mat:
    if side == SIDE_M:
        return d.M
    if side == SIDE_N:
        return d.N
    raise ValueError(f"unknown side {side!r}")


def build_power_family(d: DerivedData, k: int, left: str, side: str) -> PolyMatrix:
    """n -> M^-1 left R^(p n + k) side with the eps^n prefactor removed."""
    if not 0 <= k < d.p:
        raise ValueError(f"residue k={k} outside [0, {d.p})")
    head = d.M_inv @ left_matrix(d, left) @ mat_pow(d.R, k)
    tail = side_matrix(d, side)
    coeffs = []
    z_power = Mat.identity(d.R.dim)
    for i in range(d.nil_index):
        coeffs.append(head @ z_power.scale(Fraction(1, factorial(i))) @ tail)
        z_power = z_power @ d.Z
    return PolyMatrix(coeffs)


def conjugates(d: DerivedData, left: str, js: Iterable[int]) -> Iterator[tuple[int, Mat, Mat]]:
    """Yield (j, M^-1 L R^j M, M^-1 L R^j N) for the requested j, ascending.

    Works in the M-basis, where R acts as S = M^-1 R M, so each step is one
    exact multiplication by S or S^-1.
    """
    wanted = sorted(set(js))
    S = d.M_inv @ d.R @ d.M
    S_inv = d.M_inv @ d.R_inv @ d.M
    L = d.M_inv @ left_matrix(d, left) @ d.M
    W = d.M_inv @ d.N
    negative = [j for j in wanted if j < 0]
    positive = [j for j in wanted if j >= 0]
    out: dict[int, Mat] = {}
    for seq, step in ((sorted(negative, reverse=True), S_inv), (positive, S)):
        power, at = Mat.identity(S.dim), 0
        for j in seq:
            while at != j:
                power = power @ step
                at += 1 if j > 0 else -1
            out[j] = power
    for j in wanted:
        X = L @ out[j] if left != LEFT_I else out[j]
        yield j, X, X @ W


# --------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class FamilyResult:
    k: int
    side: str
    direction: str
    report: EventualSignReport
    holds: bool


@dataclass
class ConditionReport:
    condition: str
    families: list[FamilyResult] = field(default_factory=list)
    explicit_ranges: dict[int, tuple[int, int]] = field(default_factory=dict)
    explicit_checks: list[tuple[int, bool]] = field(default_factory=list)
    matrix: Mat | None = None
    verdict: bool = False
    failure: str | None = None


def explicit_js(p: int, ranges: dict[int, tuple[int, int]]) -> list[int]:
    """All j = p n + k, j != 0, with n_lo <= n <= n_hi per residue k."""
    js = []
    for k, (lo, hi) in sorted(ranges.items()):
        js.extend(p * n + k for n in range(lo, hi + 1) if p * n + k != 0)
    return sorted(js)


def _check_power_condition(
    d: DerivedData, condition: str, explicit_cap: int | None
) -> tuple[ConditionReport, dict]:
    predicate = PREDICATES[condition]
    left = LEFT_FOR[condition]
    report = ConditionReport(condition)
    families = {}
    for k in range(d.p):
        thresholds = {PLUS_INF: 1, MINUS_INF: 1}
        for side in SIDES:
            family = build_power_family(d, k, left, side)
            families[(left, k, side)] = family
            for direction in DIRECTIONS:
                ev = eventual_signs(family, direction)
                holds = predicate(ev.signs)
                report.families.append(FamilyResult(k, side, direction, ev, holds))
                thresholds[direction] = max(thresholds[direction], ev.threshold)
                if not holds and report.failure is None:
                    report.failure = f"{condition}: eventual pattern fails for k={k}, side={side}, n -> {direction}"
        report.explicit_ranges[k] = (1 - thresholds[MINUS_INF], thresholds[PLUS_INF] - 1)

    js = explicit_js(d.p, report.explicit_ranges)
    if explicit_cap is not None and len(js) > explicit_cap:
        raise ExplicitRangeExceeded(
            f"{condition}: {len(js)} explicit checks exceed the cap of {explicit_cap}"
        )
    for j, X_M, X_N in conjugates(d, left, js):
        ok = predicate(sign_pattern(X_M)) and predicate(sign_pattern(X_N))
        report.explicit_checks.append((j, ok))
        if not ok and report.failure is None:
            report.failure = f"{condition}: explicit check fails at j={j}"
    report.verdict = report.failure is None
    return report, families


def check_A1(d: DerivedData, explicit_cap: int | None = 10000) -> ConditionReport:
    return _check_power_condition(d, A1, explicit_cap)[0]


def check_C3(d: DerivedData, explicit_cap: int | None = 10000) -> ConditionReport:
    return _check_power_condition(d, C3, explicit_cap)[0]


def check_C1(d: DerivedData) -> ConditionReport:
    m = d.M_inv @ d.T_inv @ d.M
    report = ConditionReport(C1, matrix=m)
    report.verdict = is_nonnegative_cone_map(sign_pattern(m))
    if not report.verdict:
        report.failure = "C1: M^-1 T^-1 M is not non-negative"
    return report


def small_j_ok(d: DerivedData, condition: str, js=SMALL_J) -> bool:
    predicate = PREDICATES[condition]
    return all(
        predicate(sign_pattern(X_M)) and predicate(sign_pattern(X_N))
        for _, X_M, X_N in conjugates(d, LEFT_FOR[condition], js)
    )
