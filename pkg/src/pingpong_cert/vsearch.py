"""Search for seed vectors v in the fixed space of H.

Candidates are rational points s = (s1, 1, s3) on the quadric
v(s)^T J P v(s) = 0, with v(s) = s1*b1 + s2*b2 + s3*b3 for the reduced
echelon basis (b1, b2, b3) of ker(H - I).  Each candidate is pushed through
cheap rejection stages before the full certification.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterator, Sequence

from .errors import CertifierError, SingularMatrix
from .exactlin import Mat, Vector, mat_kernel, rational_str, to_rational
from .pingpong.certificate import FREE_PRODUCT, certify
from .pingpong.conditions import A1, C3, check_C1, small_j_ok
from .pingpong.normal_form import CaseSpec, DerivedData, attach_seed, normal_form


class Stage(str, Enum):
    REJECTED_SINGULAR_M = "REJECTED_SINGULAR_M"
    REJECTED_C1 = "REJECTED_C1"
    REJECTED_SMALL_J = "REJECTED_SMALL_J"
    REJECTED_FULL = "REJECTED_FULL"
    CERTIFIED = "CERTIFIED"


@dataclass(frozen=True)
class SeedCandidate:
    coords: tuple[Fraction, Fraction, Fraction]
    v: Vector
    quadratic_value: Fraction
    stage_reached: Stage

    def to_dict(self) -> dict:
        return {
            "coords": [rational_str(x) for x in self.coords],
            "v": [rational_str(x) for x in self.v],
            "quadratic_value": rational_str(self.quadratic_value),
            "stage_reached": self.stage_reached.value,
        }


def fixed_space_basis(d: DerivedData) -> list[Vector]:
    basis = mat_kernel(d.H - Mat.identity(d.H.dim))
    if len(basis) != 3:
        raise CertifierError(f"fixed space of H has dimension {len(basis)}, expected 3")
    return basis


def seed_vector(basis: Sequence[Vector], s: Sequence) -> Vector:
    s = [to_rational(x) for x in s]
    return tuple(sum((c * b[i] for c, b in zip(s, basis)), Fraction(0)) for i in range(len(basis[0])))


def _bilinear(d: DerivedData, x: Vector, y: Vector) -> Fraction:
    return sum((a * b for a, b in zip(x, (d.J @ d.P).apply(y))), Fraction(0))


def pingpong_quadratic(d: DerivedData, s: Sequence) -> Fraction:
    """Exact value of v(s)^T J P v(s)."""
    v = seed_vector(fixed_space_basis(d), s)
    return _bilinear(d, v, v)


def coordinates(basis: Sequence[Vector], v: Sequence) -> tuple[Fraction, ...]:
    """Coordinates of v in a reduced echelon basis (read at the pivots)."""
    pivots = [next(i for i, x in enumerate(b) if x) for b in basis]
    s = tuple(to_rational(v[p]) for p in pivots)
    if seed_vector(basis, s) != tuple(to_rational(x) for x in v):
        raise ValueError("vector is not in the span of the basis")
    return s


def height(q: Fraction) -> int:
    return max(abs(q.numerator), q.denominator)


def rationals_up_to(h: int) -> Iterator[Fraction]:
    """Every rational with |numerator|, denominator <= h, by height then value."""
    for level in range(1, h + 1):
        batch = set()
        for den in range(1, level + 1):
            for num in range(-level, level + 1):
                if max(abs(num), den) == level and gcd(num, den) == 1:
                    batch.add(Fraction(num, den))
        yield from sorted(batch)


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def rational_roots_s3(d: DerivedData, basis: Sequence[Vector], s1: Fraction) -> list[Fraction]:
    """Rational s3 with q(s1, 1, s3) = 0."""
    g = [[_bilinear(d, x, y) for y in basis] for x in basis]
    a = g[2][2]
    b = (g[0][2] + g[2][0]) * s1 + (g[1][2] + g[2][1])
    c = g[0][0] * s1 * s1 + (g[0][1] + g[1][0]) * s1 + g[1][1]
    if a == 0:
        return [] if b == 0 else [-c / b]
    root = _rational_sqrt(b * b - 4 * a * c)
    if root is None:
        return []
    return sorted({(-b + root) / (2 * a), (-b - root) / (2 * a)})


def run_stages(spec: CaseSpec, base: DerivedData, v: Vector) -> Stage:
    """Push one seed through the staged checks; each rejection is exact."""
    try:
        d = attach_seed(base, v)
    except SingularMatrix:
        return Stage.REJECTED_SINGULAR_M
    if not check_C1(d).verdict:
        return Stage.REJECTED_C1
    if not (small_j_ok(d, A1) and small_j_ok(d, C3)):
        return Stage.REJECTED_SMALL_J
    try:
        cert = certify(spec.with_seed(v))
    except CertifierError:
        return Stage.REJECTED_FULL
    return Stage.CERTIFIED if cert.status == FREE_PRODUCT else Stage.REJECTED_FULL


def search(
    spec: CaseSpec,
    height_bound: int,
    limit: int,
    known: Sequence | None = None,
) -> list[SeedCandidate]:
    """Enumerate seeds with s2 = 1 and |s1| of height <= height_bound.

    ``known`` (a 6-vector in the fixed space) is tried first when given.
    The case's own v is ignored otherwise.
    """
    base = normal_form(spec)
    basis = fixed_space_basis(base)
    points: list[tuple[Fraction, Fraction, Fraction]] = []
    for s1 in rationals_up_to(height_bound):
        for s3 in rational_roots_s3(base, basis, s1):
            points.append((s1, Fraction(1), s3))
    points.sort(key=lambda s: (height(s[0]), height(s[2]), s[0], s[2]))
    if known is not None:
        s_known = coordinates(basis, known)
        points = [s_known] + [s for s in points if s != s_known]

    out = []
    for s in points[:limit]:
        v = seed_vector(basis, s)
        stage = run_stages(spec, base, v)
        out.append(SeedCandidate(s, v, _bilinear(base, v, v), stage))
    return out
