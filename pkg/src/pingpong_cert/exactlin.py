"""Exact dense linear algebra over the rationals.

Every scalar is a :class:`fractions.Fraction`; matrices are immutable and
square.  Elimination-based routines (inverse, determinant, rank, kernel) run
fraction-free on integer-scaled copies so that intermediate denominators do
not blow up.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, lcm
from typing import Iterable, Sequence

from .errors import NotNilpotent, NotUnipotent, SingularMatrix

Rational = Fraction
Vector = tuple[Fraction, ...]


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and strings like ``"-1162/225"``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def rational_str(q: Fraction) -> str:
    """Canonical ``p/q`` string, denominator always written."""
    return f"{q.numerator}/{q.denominator}"


def vector(entries: Iterable) -> Vector:
    return tuple(to_rational(e) for e in entries)


class Mat:
    """An immutable square matrix of Fractions."""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(to_rational(e) for e in row) for row in rows)
        n = len(rows)
        if n == 0:
            raise ValueError("matrix dimension must be at least 1")
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        self.rows = rows
        self._hash = None

    @classmethod
    def _raw(cls, rows: tuple) -> "Mat":
        # Trusted constructor: rows already a tuple of tuples of Fractions.
        m = object.__new__(cls)
        m.rows = rows
        m._hash = None
        return m

    @classmethod
    def identity(cls, n: int) -> "Mat":
        one, zero = Fraction(1), Fraction(0)
        return cls._raw(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, n: int) -> "Mat":
        return cls._raw(tuple((Fraction(0),) * n for _ in range(n)))

    @classmethod
    def diagonal(cls, entries: Sequence) -> "Mat":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "Mat":
        n = len(columns)
        return cls([[columns[j][i] for j in range(n)] for i in range(n)])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    @property
    def T(self) -> "Mat":
        return Mat._raw(tuple(zip(*self.rows)))

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat) and self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(e) for e in r) for r in self.rows)
        return f"Mat([{body}])"

    def _check_dim(self, other: "Mat") -> None:
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: "Mat") -> "Mat":
        self._check_dim(other)
        return Mat._raw(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_dim(other)
        return Mat._raw(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __neg__(self) -> "Mat":
        return Mat._raw(tuple(tuple(-a for a in r) for r in self.rows))

    def scale(self, c) -> "Mat":
        c = to_rational(c)
        return Mat._raw(tuple(tuple(c * a for a in r) for r in self.rows))

    def __mul__(self, other):
        if isinstance(other, Mat):
            return self @ other
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check_dim(other)
        cols = tuple(zip(*other.rows))
        zero = Fraction(0)
        return Mat._raw(
            tuple(tuple(sum((a * b for a, b in zip(r, c) if a and b), zero) for c in cols) for r in self.rows)
        )

    def apply(self, v: Sequence[Fraction]) -> Vector:
        """Matrix-vector product ``self @ v``."""
        if len(v) != self.dim:
            raise ValueError("vector length does not match matrix dimension")
        return tuple(sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self.rows)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def to_strings(self) -> list[list[str]]:
        return [[rational_str(e) for e in r] for r in self.rows]

    @classmethod
    def from_strings(cls, rows) -> "Mat":
        return cls(rows)


# --------------------------------------------------------------------------
# fraction-free elimination


def _integer_rows(m: Mat) -> tuple[list[list[int]], list[int]]:
    """Scale each row to integers; returns (rows, per-row scale factors)."""
    out, scales = [], []
    for r in m.rows:
        s = lcm(*(e.denominator for e in r))
        out.append([int(e * s) for e in r])
        scales.append(s)
    return out, scales


def _bareiss_echelon(a: list[list[int]]) -> tuple[list[list[int]], list[int], int]:
    """In-place fraction-free forward elimination.

    Returns (matrix, pivot columns, sign of the row permutation).
    """
    nrows, ncols = len(a), len(a[0]) if a else 0
    prev, row, sign = 1, 0, 1
    pivots: list[int] = []
    for col in range(ncols):
        if row == nrows:
            break
        p = next((i for i in range(row, nrows) if a[i][col]), None)
        if p is None:
            continue
        if p != row:
            a[row], a[p] = a[p], a[row]
            sign = -sign
        piv = a[row][col]
        for i in range(row + 1, nrows):
            lead = a[i][col]
            a[i] = [(piv * x - lead * y) // prev for x, y in zip(a[i], a[row])]
        prev = piv
        pivots.append(col)
        row += 1
    return a, pivots, sign


def determinant(m: Mat) -> Fraction:
    rows, scales = _integer_rows(m)
    n = m.dim
    ech, pivots, sign = _bareiss_echelon(rows)
    if len(pivots) < n:
        return Fraction(0)
    det_scaled = sign * ech[n - 1][n - 1]
    denom = 1
    for s in scales:
        denom *= s
    return Fraction(det_scaled, denom)


def rank(m: Mat) -> int:
    rows, _ = _integer_rows(m)
    return len(_bareiss_echelon(rows)[1])


def mat_inverse(m: Mat) -> Mat:
    """Exact inverse via fraction-free Gauss-Jordan on ``[m | I]``.

    Raises SingularMatrix when det(m) = 0.
    """
    n = m.dim
    rows, scales = _integer_rows(m)
    aug = [r + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(rows)]
    prev = 1
    for k in range(n):
        p = next((i for i in range(k, n) if aug[i][k]), None)
        if p is None:
            raise SingularMatrix("matrix is singular")
        if p != k:
            aug[k], aug[p] = aug[p], aug[k]
        piv_row = aug[k]
        piv = piv_row[k]
        for i in range(n):
            if i == k:
                continue
            lead = aug[i][k]
            aug[i] = [(piv * x - lead * y) // prev for x, y in zip(aug[i], piv_row)]
        prev = piv
    # Left block is now diag(det'), right block an integer multiple of the inverse
    # of the row-scaled matrix; undo the row scaling on the columns.
    return Mat._raw(
        tuple(
            tuple(Fraction(aug[i][n + j] * scales[j], aug[i][i]) for j in range(n))
            for i in range(n)
        )
    )


def mat_pow(m: Mat, j: int) -> Mat:
    """Exact integer power; negative exponents go through the inverse."""
    if j < 0:
        m, j = mat_inverse(m), -j
    result = Mat.identity(m.dim)
    base = m
    while j:
        if j & 1:
            result = result @ base
        j >>= 1
        if j:
            base = base @ base
    return result


def nilpotency_index(z: Mat) -> int | None:
    """Smallest m >= 1 with z**m == 0, or None when z is not nilpotent."""
    power = z
    for m in range(1, z.dim + 1):
        if power.is_zero():
            return m
        power = power @ z
    return None


def is_nilpotent(z: Mat) -> bool:
    return nilpotency_index(z) is not None


def is_unipotent(m: Mat) -> bool:
    return is_nilpotent(m - Mat.identity(m.dim))


def unipotent_log(f: Mat) -> Mat:
    """Logarithm of a unipotent matrix by the terminating series in (f - I)."""
    n = f.dim
    x = f - Mat.identity(n)
    if not is_nilpotent(x):
        raise NotUnipotent("matrix is not unipotent")
    result = Mat.zero(n)
    power = x
    for i in range(1, n):
        term = power.scale(Fraction(1 if i % 2 else -1, i))
        result = result + term
        power = power @ x
    return result


def nilpotent_exp(z: Mat) -> Mat:
    """Exponential of a nilpotent matrix by the terminating power series."""
    n = z.dim
    if not is_nilpotent(z):
        raise NotNilpotent("matrix is not nilpotent")
    result = Mat.identity(n)
    power = Mat.identity(n)
    for i in range(1, n):
        power = power @ z
        result = result + power.scale(Fraction(1, factorial(i)))
    return result


def _rref_rows(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form of a rectangular rational matrix."""
    if not rows:
        return [], []
    scaled = []
    for r in rows:
        s = lcm(*(e.denominator for e in r))
        scaled.append([int(e * s) for e in r])
    ech, pivots, _ = _bareiss_echelon(scaled)
    red = [[Fraction(x) for x in r] for r in ech[: len(pivots)]]
    for i, col in enumerate(pivots):
        piv = red[i][col]
        red[i] = [x / piv for x in red[i]]
    for i in reversed(range(len(pivots))):
        col = pivots[i]
        for k in range(i):
            c = red[k][col]
            if c:
                red[k] = [x - c * y for x, y in zip(red[k], red[i])]
    return red, pivots


def mat_kernel(m: Mat) -> list[Vector]:
    """Basis of the right kernel, returned in reduced echelon form."""
    n = m.dim
    red, pivots = _rref_rows([list(r) for r in m.rows])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for i, col in enumerate(pivots):
            x[col] = -red[i][f]
        basis.append(x)
    reduced, _ = _rref_rows(basis)
    return [tuple(b) for b in reduced]


# --------------------------------------------------------------------------
# sign patterns


def _sgn(q: Fraction) -> int:
    return (q > 0) - (q < 0)


@dataclass(frozen=True)
class SignPattern:
    """Entrywise signs in {-1, 0, +1}."""

    signs: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.signs)

    def row_nonnegative(self, r: int) -> bool:
        return all(s >= 0 for s in self.signs[r])

    def row_nonpositive(self, r: int) -> bool:
        return all(s <= 0 for s in self.signs[r])

    def row_zero(self, r: int) -> bool:
        return not any(self.signs[r])

    def is_nonnegative(self) -> bool:
        return all(self.row_nonnegative(r) for r in range(self.dim))

    def is_nonpositive(self) -> bool:
        return all(self.row_nonpositive(r) for r in range(self.dim))

    def has_zero_row(self) -> bool:
        return any(self.row_zero(r) for r in range(self.dim))

    def negated(self) -> "SignPattern":
        return SignPattern(tuple(tuple(-s for s in row) for row in self.signs))

    def to_strings(self) -> list[str]:
        return ["".join("+" if s > 0 else "-" if s < 0 else "0" for s in row) for row in self.signs]

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> "SignPattern":
        table = {"+": 1, "-": -1, "0": 0}
        try:
            return cls(tuple(tuple(table[ch] for ch in row) for row in rows))
        except KeyError as exc:
            raise ValueError(f"bad sign character {exc}") from None


def sign_pattern(m: Mat) -> SignPattern:
    return SignPattern(tuple(tuple(_sgn(e) for e in r) for r in m.rows))
