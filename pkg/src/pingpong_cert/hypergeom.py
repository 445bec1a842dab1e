"""Hypergeometric group data: cyclotomic products, companion matrices and
the preconditions the ping-pong construction relies on.

Integer polynomials are plain lists of ints, constant term first.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

from .errors import InvalidParameters, NotGaloisClosed, NotMonic
from .exactlin import Mat, to_rational

IntPolynomial = list[int]


def _trim(p: Sequence[int]) -> list:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def poly_mul(p: Sequence[int], q: Sequence[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def poly_divmod_monic(p: Sequence[int], q: Sequence[int]) -> tuple[list[int], list[int]]:
    """Division by a monic integer polynomial (stays in Z[x])."""
    q = _trim(q)
    if q[-1] != 1:
        raise NotMonic("divisor must be monic")
    rem = list(p)
    dq = len(q) - 1
    if len(rem) - 1 < dq:
        return [0], _trim(rem)
    quot = [0] * (len(rem) - dq)
    for i in range(len(rem) - 1, dq - 1, -1):
        c = rem[i]
        if c:
            quot[i - dq] = c
            for k in range(dq + 1):
                rem[i - dq + k] -= c * q[k]
    return _trim(quot), _trim(rem[:dq] or [0])


def poly_derivative(p: Sequence[int]) -> list[int]:
    return _trim([i * c for i, c in enumerate(p)][1:] or [0])


def degree(p: Sequence) -> int:
    p = _trim(p)
    return -1 if p == [0] else len(p) - 1


@lru_cache(maxsize=None)
def cyclotomic(m: int) -> tuple[int, ...]:
    """The m-th cyclotomic polynomial, via x^m - 1 = prod_{e | m} Phi_e."""
    if m < 1:
        raise ValueError("cyclotomic index must be positive")
    num = [-1] + [0] * (m - 1) + [1]
    for e in range(1, m):
        if m % e == 0:
            num, rem = poly_divmod_monic(num, cyclotomic(e))
            assert rem == [0]
    return tuple(num)


def _mod_one(r: Fraction) -> Fraction:
    return r - (r.numerator // r.denominator)


def cyclotomic_product(roots: Sequence) -> IntPolynomial:
    """prod (x - exp(2 pi i r)) over the given residues, as an integer polynomial.

    The root multiset must be a union of full Galois orbits, otherwise the
    product has non-rational coefficients and NotGaloisClosed is raised.
    """
    residues = Counter(_mod_one(to_rational(r)) for r in roots)
    by_order: dict[int, Counter] = {}
    for r, mult in residues.items():
        by_order.setdefault(r.denominator, Counter())[r.numerator] += mult
    result = [1]
    for m in sorted(by_order):
        counts = by_order[m]
        orbit = [k for k in range(m) if gcd(k, m) == 1]
        mults = {counts.get(k, 0) for k in orbit}
        if len(mults) != 1:
            missing = [f"{k}/{m}" for k in orbit if counts.get(k, 0) != max(mults)]
            raise NotGaloisClosed(f"orbit of order {m} is incomplete near {', '.join(missing)}")
        for _ in range(mults.pop()):
            result = poly_mul(result, cyclotomic(m))
    return result


def companion(p: Sequence[int | Fraction]) -> Mat:
    """Companion matrix with ones on the subdiagonal and -coefficients in the last column."""
    p = _trim(p)
    n = len(p) - 1
    if n < 1:
        raise ValueError("companion matrix needs degree >= 1")
    if p[-1] != 1:
        raise NotMonic("polynomial is not monic")
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i in range(n):
        rows[i][n - 1] = -p[i]
    return Mat(rows)


def charpoly(m: Mat) -> list[Fraction]:
    """Characteristic polynomial det(xI - m) via Faddeev-LeVerrier (constant term first)."""
    n = m.dim
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    ident = Mat.identity(n)
    work = Mat.zero(n)
    for k in range(1, n + 1):
        work = m @ work + ident.scale(coeffs[n - k + 1])
        trace = sum(((m @ work)[i, i] for i in range(n)), Fraction(0))
        coeffs[n - k] = -trace / k
    return coeffs


def is_primitive_pair(f: Sequence[int], g: Sequence[int]) -> bool:
    """True unless some k >= 2 makes both f and g polynomials in x^k."""
    k = 0
    for p in (f, g):
        for e, c in enumerate(p):
            if c:
                k = gcd(k, e)
    return k == 1


def _primitive_part(p: list[int]) -> list[int]:
    c = 0
    for a in p:
        c = gcd(c, a)
    if c == 0:
        return [0]
    if p[-1] < 0:
        c = -c
    return [a // c for a in p]


def _pseudo_rem(p: list[int], q: list[int]) -> list[int]:
    """Pseudo-remainder lc(q)^(deg p - deg q + 1) * p mod q, in Z[x]."""
    rem = list(p)
    dq = degree(q)
    lc = q[-1]
    while degree(rem) >= dq and rem != [0]:
        shift = degree(rem) - dq
        lead = rem[-1]
        rem = [lc * a for a in rem]
        for k in range(dq + 1):
            rem[shift + k] -= lead * q[k]
        rem = _trim(rem)
    return rem


def poly_gcd(p: Sequence[int], q: Sequence[int]) -> list[int]:
    """Primitive gcd over Q (content-free, positive leading coefficient).

    Uses the primitive pseudo-remainder sequence, which stays in Z[x].
    """
    a, b = _primitive_part(_trim(p)), _primitive_part(_trim(q))
    if degree(a) < degree(b):
        a, b = b, a
    while b != [0]:
        r = _pseudo_rem(a, b)
        a, b = b, (_primitive_part(r) if r != [0] else [0])
    return a


def has_repeated_roots(p: Sequence[int]) -> bool:
    if degree(p) < 1:
        raise ValueError("degree must be at least 1")
    return degree(poly_gcd(p, poly_derivative(p))) > 0


def check_symplectic(m: Mat, form: Mat) -> bool:
    return m.T @ form @ m == form


@dataclass(frozen=True)
class HGParams:
    alpha: tuple[Fraction, ...]
    beta: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.alpha) != len(self.beta):
            raise InvalidParameters("alpha and beta must have equal length")
        if len(self.alpha) % 2:
            raise InvalidParameters("symplectic setting needs even degree")
        a_res = {_mod_one(a) for a in self.alpha}
        b_res = {_mod_one(b) for b in self.beta}
        if a_res & b_res:
            raise InvalidParameters("alpha_j - beta_k is an integer for some j, k")

    @classmethod
    def of(cls, alpha: Sequence, beta: Sequence) -> "HGParams":
        return cls(tuple(to_rational(a) for a in alpha), tuple(to_rational(b) for b in beta))

    def polynomials(self) -> tuple[IntPolynomial, IntPolynomial]:
        return cyclotomic_product(self.alpha), cyclotomic_product(self.beta)
