"""Change of basis to the (U, T, R) normal form and everything derived from it."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from ..errors import (
    IdentityFailure,
    NotQuasiUnipotentWithinBound,
    NotUnipotent,
    SingularMatrix,
    TemplateMismatch,
)
from ..exactlin import (
    Mat,
    Vector,
    mat_inverse,
    mat_pow,
    is_unipotent,
    nilpotency_index,
    nilpotent_exp,
    rank,
    unipotent_log,
    vector,
)
from ..hypergeom import HGParams, companion

DIM = 6
MAXIMALLY_UNIPOTENT_ALPHA = (Fraction(0),) * DIM


@dataclass(frozen=True)
class CaseSpec:
    id: str
    beta: tuple[Fraction, ...]
    K: Mat
    v: Vector | None = None
    expected_adc: tuple[int, int, int] | None = None
    pmax: int = 24
    explicit_cap: int = 10000

    def __post_init__(self):
        if len(self.beta) != DIM:
            raise ValueError(f"beta must have {DIM} entries")
        if self.K.dim != DIM:
            raise ValueError(f"K must be {DIM}x{DIM}")
        if self.v is not None:
            if len(self.v) != DIM:
                raise ValueError(f"v must have {DIM} entries")
            if not any(self.v):
                raise ValueError("v must be nonzero")
        if self.pmax < 1 or self.explicit_cap < 1:
            raise ValueError("pmax and explicit_cap must be positive")

    @property
    def alpha(self) -> tuple[Fraction, ...]:
        return MAXIMALLY_UNIPOTENT_ALPHA

    def with_seed(self, v: Sequence) -> "CaseSpec":
        return replace(self, v=vector(v))


# --------------------------------------------------------------------------
# fixed shapes


def u_template(a, d, c) -> Mat:
    return Mat([
        [1, 1, 0, 0, 0, 0],
        [0, 1, 1, 0, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [-a, -a, 0, 1, 0, 0],
        [0, d, d, -1, 1, 0],
        [0, 0, -c, 1, -1, 1],
    ])


def t_template() -> Mat:
    rows = [[int(i == j) for j in range(DIM)] for i in range(DIM)]
    rows[2][5] = 1
    return Mat(rows)


def r_template(a, d, c) -> Mat:
    return Mat([
        [1, 1, 0, 0, 0, 0],
        [0, 1, 1, 0, 0, 0],
        [0, 0, 1 - c, 1, -1, 1],
        [-a, -a, 0, 1, 0, 0],
        [0, d, d, -1, 1, 0],
        [0, 0, -c, 1, -1, 1],
    ])


def symplectic_form() -> Mat:
    rows = [[0] * DIM for _ in range(DIM)]
    for i in range(3):
        rows[i][i + 3] = 1
        rows[i + 3][i] = -1
    return Mat(rows)


def involution(d) -> Mat:
    return Mat([
        [1, 1, 0, 0, 0, 0],
        [0, -1, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, -1],
        [0, 0, 0, -1, 0, 0],
        [0, -d, 0, -1, 1, 0],
        [0, 0, 0, 0, 0, -1],
    ])


# --------------------------------------------------------------------------


def detect_quasi_unipotent(r: Mat, pmax: int) -> tuple[int, int]:
    """Smallest p with eps * r**p unipotent, eps in {+1, -1} (+1 preferred)."""
    if pmax < 1:
        raise ValueError("pmax must be positive")
    power = Mat.identity(r.dim)
    for p in range(1, pmax + 1):
        power = power @ r
        if is_unipotent(power):
            return p, 1
        if is_unipotent(-power):
            return p, -1
    raise NotQuasiUnipotentWithinBound(f"no power R^p with p <= {pmax} is +-unipotent")


@dataclass(frozen=True)
class DerivedData:
    A: Mat
    B: Mat
    K: Mat
    U: Mat
    T: Mat
    R: Mat
    J: Mat
    H: Mat
    P: Mat
    Q: Mat
    Z: Mat
    a: int
    d: int
    c: int
    p: int
    epsilon: int
    nil_index: int
    f: tuple[int, ...]
    g: tuple[int, ...]
    v: Vector | None = None
    M: Mat | None = None
    N: Mat | None = None
    identities: tuple[tuple[str, bool], ...] = field(default=())

    # cached helpers for the condition checks
    @property
    def T_inv(self) -> Mat:
        return _cached(self, "_T_inv", lambda: mat_inverse(self.T))

    @property
    def R_inv(self) -> Mat:
        return _cached(self, "_R_inv", lambda: mat_inverse(self.R))

    @property
    def M_inv(self) -> Mat:
        if self.M is None:
            raise ValueError("no seed vector attached")
        return _cached(self, "_M_inv", lambda: mat_inverse(self.M))

    @property
    def N_inv(self) -> Mat:
        if self.N is None:
            raise ValueError("no seed vector attached")
        return _cached(self, "_N_inv", lambda: mat_inverse(self.N))


def _cached(obj, name, compute):
    try:
        return obj.__dict__[name]
    except KeyError:
        value = compute()
        object.__setattr__(obj, name, value)
        return value


def _read_parameters(U: Mat) -> tuple[int, int, int]:
    a, d, c = -U[3, 0], U[4, 1], -U[5, 2]
    for name, x in (("a", a), ("d", d), ("c", c)):
        if x.denominator != 1 or x <= 0:
            raise TemplateMismatch(f"{name} = {x} is not a positive integer")
    return int(a), int(d), int(c)


def normal_form(spec: CaseSpec) -> DerivedData:
    """Everything that does not depend on the seed vector v."""
    params = HGParams(spec.alpha, spec.beta)
    f, g = params.polynomials()
    A, B = companion(f), companion(g)
    try:
        K_inv = mat_inverse(spec.K)
    except SingularMatrix:
        raise SingularMatrix("change of basis K is singular") from None
    U = K_inv @ A @ spec.K
    T = K_inv @ mat_inverse(A) @ B @ spec.K
    R = T @ U
    a, d, c = _read_parameters(U)
    for name, got, want in (
        ("U", U, u_template(a, d, c)),
        ("T", T, t_template()),
        ("R", R, r_template(a, d, c)),
    ):
        if got != want:
            raise TemplateMismatch(f"{name} is not of the normal-form shape; K does not fit this beta")
    if spec.expected_adc is not None and tuple(spec.expected_adc) != (a, d, c):
        raise TemplateMismatch(f"derived (a,d,c) = {(a, d, c)} but expected {tuple(spec.expected_adc)}")

    J = symplectic_form()
    H = involution(d)
    I = Mat.identity(DIM)
    T_inv, R_inv = mat_inverse(T), mat_inverse(R)
    checks = [
        ("U^T J U = J", U.T @ J @ U == J),
        ("T^T J T = J", T.T @ J @ T == J),
        ("R^T J R = J", R.T @ J @ R == J),
        ("H^2 = I", H @ H == I),
        ("H R H = R^-1", H @ R @ H == R_inv),
        ("H T^-1 H = T", H @ T_inv @ H == T),
    ]
    _require(checks)
    try:
        P = unipotent_log(T_inv @ R)
        Q = unipotent_log(T @ R_inv)
    except NotUnipotent as exc:
        raise IdentityFailure(f"T^-1 R or T R^-1 is not unipotent: {exc}") from None
    checks.append(("H P = Q H", H @ P == Q @ H))
    _require(checks[-1:])

    p, eps = detect_quasi_unipotent(R, spec.pmax)
    Z = unipotent_log(mat_pow(R, p).scale(eps))
    nil = nilpotency_index(Z)
    dictionary_ok = all(
        mat_pow(R, p * n + k) == mat_pow(R, k).scale(eps**abs(n)) @ nilpotent_exp(Z.scale(n))
        for n in (-2, -1, 1, 2)
        for k in sorted({0, p - 1})
    )
    checks.append(("R^(p n + k) = eps^n R^k exp(n Z)", dictionary_ok))
    _require(checks[-1:])

    data = DerivedData(
        A=A, B=B, K=spec.K, U=U, T=T, R=R, J=J, H=H, P=P, Q=Q, Z=Z,
        a=a, d=d, c=c, p=p, epsilon=eps, nil_index=nil,
        f=tuple(f), g=tuple(g), identities=tuple(checks),
    )
    object.__setattr__(data, "_T_inv", T_inv)
    object.__setattr__(data, "_R_inv", R_inv)
    return data


def _require(checks: Sequence[tuple[str, bool]]) -> None:
    for name, ok in checks:
        if not ok:
            raise IdentityFailure(f"identity failed: {name}")


def orbit_matrix(generator: Mat, v: Vector) -> Mat:
    """Matrix with columns v, X v, X^2 v, ..."""
    cols = [tuple(v)]
    for _ in range(len(v) - 1):
        cols.append(generator.apply(cols[-1]))
    return Mat.from_columns(cols)


def attach_seed(base: DerivedData, v: Sequence) -> DerivedData:
    """Add M, N for seed v and verify the identities that involve them."""
    v = vector(v)
    M = orbit_matrix(base.P, v)
    N = base.H @ M
    checks = [
        ("H v = v", base.H.apply(v) == v),
        ("N = H M has columns Q^i v", N == orbit_matrix(base.Q, v)),
    ]
    _require(checks)
    if rank(M) < DIM:
        raise SingularMatrix("M does not have full rank for this v")
    M_inv = mat_inverse(M)
    N_inv = mat_inverse(N)
    checks.append(("M full rank", True))
    checks.extend(_symmetry_checks(base, M, N, M_inv, N_inv))
    _require(checks)
    data = replace(base, v=v, M=M, N=N, identities=base.identities + tuple(checks))
    for name in ("_T_inv", "_R_inv"):
        object.__setattr__(data, name, getattr(base, name[1:]))
    object.__setattr__(data, "_M_inv", M_inv)
    object.__setattr__(data, "_N_inv", N_inv)
    return data


def _symmetry_checks(base, M, N, M_inv, N_inv) -> list[tuple[str, bool]]:
    T, T_inv = base.T, mat_inverse(base.T)
    out = [("N^-1 T N = M^-1 T^-1 M", N_inv @ T @ N == M_inv @ T_inv @ M)]
    ok_rm = ok_rn = ok_trm = ok_trn = True
    for j in (1, -1, 2, -2, 3, -3):
        Rj, Rmj = mat_pow(base.R, j), mat_pow(base.R, -j)
        ok_rm &= N_inv @ Rj @ M == M_inv @ Rmj @ N
        ok_rn &= N_inv @ Rj @ N == M_inv @ Rmj @ M
        ok_trm &= N_inv @ T @ Rj @ M == M_inv @ T_inv @ Rmj @ N
        ok_trn &= N_inv @ T @ Rj @ N == M_inv @ T_inv @ Rmj @ M
    out += [
        ("N^-1 R^j M = M^-1 R^-j N (|j| <= 3)", ok_rm),
        ("N^-1 R^j N = M^-1 R^-j M (|j| <= 3)", ok_rn),
        ("N^-1 T R^j M = M^-1 T^-1 R^-j N (|j| <= 3)", ok_trm),
        ("N^-1 T R^j N = M^-1 T^-1 R^-j M (|j| <= 3)", ok_trn),
    ]
    return out


def derive(spec: CaseSpec) -> DerivedData:
    if spec.v is None:
        raise ValueError("case has no seed vector v")
    return attach_seed(normal_form(spec), spec.v)
