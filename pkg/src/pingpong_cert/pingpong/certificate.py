"""Certificates: assembling, serializing and independently re-checking them."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Any

from ..errors import CertifierError, MalformedCertificate
from ..exactlin import (
    Mat,
    SignPattern,
    mat_inverse,
    mat_pow,
    rank,
    rational_str,
    sign_pattern,
    to_rational,
)
from ..hypergeom import check_symplectic, cyclotomic_product, has_repeated_roots, is_primitive_pair
from ..polysign import MINUS_INF, PLUS_INF, PolyMatrix, evaluate
from .conditions import (
    A1,
    C1,
    C3,
    LEFT_FOR,
    PREDICATES,
    ConditionReport,
    _check_power_condition,
    check_C1,
    explicit_js,
    is_nonnegative_cone_map,
)
from .normal_form import CaseSpec, DerivedData, derive

SCHEMA_VERSION = "1"
FREE_PRODUCT = "FREE_PRODUCT_Z_Z"
INCONCLUSIVE = "INCONCLUSIVE"
ORDER_BOUND = 60
DERIVED_MATRICES = ("A", "B", "U", "T", "R", "J", "H", "P", "Q", "Z", "M", "N")
POWER_DICTIONARY = "R^(p*n + k) = epsilon^n * R^k * exp(n*Z), 0 <= k < p, n in Z; j = 0 excluded"
THINNESS_NOTE = (
    "A verdict of FREE_PRODUCT_Z_Z shows the group is free of rank 2, hence of rational "
    "cohomological dimension 1. Finite-index subgroups of Sp_6(Z) have rational cohomological "
    "dimension at least 2, so the group has infinite index in Sp_6(Z), i.e. it is thin. "
    "That last step is theory and is not computed here."
)


@dataclass
class Certificate:
    spec: CaseSpec
    derived: DerivedData
    preconditions: list[tuple[str, bool, str]]
    conditions: dict[str, ConditionReport]
    families: dict[tuple[str, int, str], PolyMatrix]
    quadratic_value: Fraction
    status: str
    reason: str | None

    @property
    def verdict(self) -> str:
        return self.status if self.reason is None else f"{self.status}({self.reason})"

    def to_dict(self) -> dict[str, Any]:
        return certificate_dict(self)

    def to_json(self) -> str:
        return dumps(self.to_dict())


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _bare_order_check(B: Mat, bound: int) -> bool:
    """True when B^m != I for every 1 <= m <= bound."""
    I = Mat.identity(B.dim)
    power = I
    for _ in range(bound):
        power = power @ B
        if power == I:
            return False
    return True


def preconditions(spec: CaseSpec, d: DerivedData) -> list[tuple[str, bool, str]]:
    f, g = list(d.f), list(d.g)
    repeated = has_repeated_roots(g)
    infinite_order = _bare_order_check(d.B, ORDER_BOUND)
    C_minus_I = mat_inverse(d.A) @ d.B - Mat.identity(d.A.dim)
    reflection = rank(C_minus_I) == 1 and (C_minus_I @ C_minus_I).is_zero()
    return [
        ("f = (x-1)^6 and g are cyclotomic products", True,
         f"f={f}, g={[int(x) for x in cyclotomic_product(spec.beta)]}"),
        ("constant terms f(0) = g(0) = 1", f[0] == 1 and g[0] == 1, f"f(0)={f[0]}, g(0)={g[0]}"),
        ("(f, g) primitive pair", is_primitive_pair(f, g), "no k >= 2 makes both polynomials in x^k"),
        ("g has repeated roots", repeated, "gcd(g, g') nonconstant"),
        (f"B^m != I for 1 <= m <= {ORDER_BOUND}", infinite_order, "companion matrix of g"),
        ("A^-1 B is a nontrivial unipotent matrix", reflection,
         "rank(A^-1 B - I) = 1 and (A^-1 B - I)^2 = 0"),
        ("U, T, R preserve J", all(check_symplectic(X, d.J) for X in (d.U, d.T, d.R)), "X^T J X = J"),
        ("M full rank", rank(d.M) == d.M.dim, f"rank {rank(d.M)}"),
        ("G1 cap G2 = {I}", repeated and infinite_order,
         "R^m = T^n forces B^m = I, impossible when g has repeated roots; so m = n = 0"),
    ]


def certify(spec: CaseSpec) -> Certificate:
    """Run the whole pipeline; predicate failures become an INCONCLUSIVE verdict."""
    d = derive(spec)
    pre = preconditions(spec, d)
    a1, fam_a1 = _check_power_condition(d, A1, spec.explicit_cap)
    c1 = check_C1(d)
    c3, fam_c3 = _check_power_condition(d, C3, spec.explicit_cap)
    q = sum((a * b for a, b in zip(d.v, (d.J @ d.P).apply(d.v))), Fraction(0))
    reason = next((f"precondition failed: {name}" for name, ok, _ in pre if not ok), None)
    if reason is None:
        reason = next((r.failure for r in (c1, a1, c3) if not r.verdict), None)
    return Certificate(
        spec=spec,
        derived=d,
        preconditions=pre,
        conditions={A1: a1, C1: c1, C3: c3},
        families={**fam_a1, **fam_c3},
        quadratic_value=q,
        status=FREE_PRODUCT if reason is None else INCONCLUSIVE,
        reason=reason,
    )


# --------------------------------------------------------------------------
# serialization


def _mat(m: Mat) -> list[list[str]]:
    return m.to_strings()


def _vec(v) -> list[str]:
    return [rational_str(x) for x in v]


def _condition_dict(r: ConditionReport) -> dict:
    out: dict[str, Any] = {"condition": r.condition, "verdict": r.verdict, "failure": r.failure}
    if r.condition == C1:
        out["matrix"] = _mat(r.matrix)
        return out
    out["families"] = [
        {
            "k": f.k,
            "side": f.side,
            "direction": f.direction,
            "signs": f.report.signs.to_strings(),
            "threshold": f.report.threshold,
            "holds": f.holds,
        }
        for f in r.families
    ]
    out["explicit_ranges"] = [{"k": k, "n_min": lo, "n_max": hi} for k, (lo, hi) in sorted(r.explicit_ranges.items())]
    out["explicit_checks"] = [{"j": j, "holds": ok} for j, ok in r.explicit_checks]
    return out


def certificate_dict(cert: Certificate) -> dict[str, Any]:
    spec, d = cert.spec, cert.derived
    return {
        "schema_version": SCHEMA_VERSION,
        "case_id": spec.id,
        "input": {
            "beta": _vec(spec.beta),
            "K": [[int(x) for x in row] for row in spec.K.rows],
            "v": _vec(spec.v),
            "expected_adc": list(spec.expected_adc) if spec.expected_adc else None,
            "pmax": spec.pmax,
            "explicit_cap": spec.explicit_cap,
        },
        "derived": {
            "a": d.a,
            "d": d.d,
            "c": d.c,
            "p": d.p,
            "epsilon": d.epsilon,
            "nil_index": d.nil_index,
            "f": list(d.f),
            "g": list(d.g),
            "power_dictionary": POWER_DICTIONARY,
            "matrices": {name: _mat(getattr(d, name)) for name in DERIVED_MATRICES},
        },
        "identities": [{"name": name, "passed": ok} for name, ok in d.identities],
        "preconditions": [{"name": n, "passed": ok, "detail": det} for n, ok, det in cert.preconditions],
        "conditions": {name: _condition_dict(r) for name, r in cert.conditions.items()},
        "power_families": [
            {"left": left, "k": k, "side": side, "coeffs": [_mat(c) for c in fam.coeffs]}
            for (left, k, side), fam in sorted(cert.families.items())
        ],
        "diagnostic_vJPv": rational_str(cert.quadratic_value),
        "verdict": {"status": cert.status, "reason": cert.reason},
        "note": THINNESS_NOTE,
    }


# --------------------------------------------------------------------------
# verification


def _spec_from_input(doc: dict) -> CaseSpec:
    inp = doc["input"]
    adc = inp.get("expected_adc")
    return CaseSpec(
        id=doc["case_id"],
        beta=tuple(to_rational(x) for x in inp["beta"]),
        K=Mat(inp["K"]),
        v=tuple(to_rational(x) for x in inp["v"]),
        expected_adc=tuple(adc) if adc else None,
        pmax=inp["pmax"],
        explicit_cap=inp["explicit_cap"],
    )


def _cauchy_bound(poly: list[Fraction]) -> int:
    nz = [i for i, c in enumerate(poly) if c]
    if not nz or nz[-1] == 0:
        return 1
    e = nz[-1]
    return ceil(1 + max(abs(c / poly[e]) for c in poly[:e])) + 1


def _check_family_reports(cond: dict, families: dict, eps: int, p: int, predicate) -> bool:
    thresholds = {}
    for fam in cond["families"]:
        k, side, direction = fam["k"], fam["side"], fam["direction"]
        coeffs = families[(LEFT_FOR[cond["condition"]], k, side)]
        signs = SignPattern.from_strings(fam["signs"])
        t = fam["threshold"]
        poly = PolyMatrix(coeffs)
        if direction == MINUS_INF:
            poly = poly.reflected()
        dim = poly.dim
        for i in range(dim):
            for j in range(dim):
                entry = poly.entry_poly(i, j)
                lead = next((c for c in reversed(entry) if c), Fraction(0))
                if signs.signs[i][j] != (lead > 0) - (lead < 0):
                    return False
                if t < _cauchy_bound(entry):
                    return False
        for n in [t, t + 1, t + 7, 10 * t]:
            if sign_pattern(evaluate(poly, n)) != signs:
                return False
        if predicate(signs) != fam["holds"]:
            return False
        key = (k, direction)
        thresholds[key] = max(thresholds.get(key, 1), t)
    ranges = {r["k"]: (r["n_min"], r["n_max"]) for r in cond["explicit_ranges"]}
    if set(ranges) != set(range(p)):
        return False
    for k, (lo, hi) in ranges.items():
        if hi < thresholds.get((k, PLUS_INF), 1) - 1 or lo > 1 - thresholds.get((k, MINUS_INF), 1):
            return False
    return True


def _check_explicit(cond: dict, mats: dict, p: int, predicate) -> bool:
    """Recompute every explicit check from direct integer powers of R."""
    claimed = {c["j"]: c["holds"] for c in cond["explicit_checks"]}
    ranges = {r["k"]: (r["n_min"], r["n_max"]) for r in cond["explicit_ranges"]}
    if sorted(claimed) != explicit_js(p, ranges) or len(claimed) != len(cond["explicit_checks"]):
        return False
    R, M, N = mats["R"], mats["M"], mats["N"]
    M_inv = mat_inverse(M)
    left = mat_inverse(mats["T"]) if cond["condition"] == C3 else Mat.identity(R.dim)
    head = M_inv @ left
    sweeps = (
        (R, sorted(j for j in claimed if j > 0)),
        (mat_inverse(R), sorted((j for j in claimed if j < 0), reverse=True)),
    )
    for step, js in sweeps:
        power, at = Mat.identity(R.dim), 0
        for j in js:
            while at != abs(j):
                power = power @ step
                at += 1
            X = head @ power
            ok = predicate(sign_pattern(X @ M)) and predicate(sign_pattern(X @ N))
            if ok != claimed[j]:
                return False
    return True


def _check_matrices(doc: dict, mats: dict) -> bool:
    inp, der = doc["input"], doc["derived"]
    K = Mat(inp["K"])
    K_inv = mat_inverse(K)
    A, B, U, T, R, H, J, P, Q, Z, M, N = (mats[x] for x in "A B U T R H J P Q Z M N".split())
    I = Mat.identity(A.dim)
    v = tuple(to_rational(x) for x in inp["v"])
    claims = [
        K_inv @ A @ K == U,
        K_inv @ mat_inverse(A) @ B @ K == T,
        T @ U == R,
        H @ H == I,
        H @ R @ H == mat_inverse(R),
        H @ mat_inverse(T) @ H == T,
        H @ P == Q @ H,
        H @ M == N,
        H.apply(v) == v,
        all(X.T @ J @ X == J for X in (U, T, R)),
        (der["a"], der["d"], der["c"]) == (-U[3, 0], U[4, 1], -U[5, 2]),
    ]
    col = v
    for i in range(A.dim):
        claims.append(M.column(i) == col)
        col = P.apply(col)
    p, eps = der["p"], der["epsilon"]
    claims.append(mat_pow(R, p).scale(eps) == sum(_exp_terms(Z), Mat.zero(A.dim)))
    return all(claims)


def _exp_terms(Z: Mat):
    term = Mat.identity(Z.dim)
    i = 0
    while not term.is_zero():
        yield term
        i += 1
        term = (term @ Z).scale(Fraction(1, i))


def verify_certificate(cert) -> bool:
    """Re-derive every claim in a certificate (dict, JSON text or Certificate)."""
    if isinstance(cert, Certificate):
        doc = cert.to_dict()
    elif isinstance(cert, str):
        try:
            doc = json.loads(cert)
        except json.JSONDecodeError as exc:
            raise MalformedCertificate(f"not JSON: {exc}") from None
    else:
        doc = cert
    try:
        if doc["schema_version"] != SCHEMA_VERSION:
            raise MalformedCertificate(f"unsupported schema version {doc['schema_version']!r}")
        spec = _spec_from_input(doc)
        mats = {name: Mat(rows) for name, rows in doc["derived"]["matrices"].items()}
        families = {
            (f["left"], f["k"], f["side"]): [Mat(c) for c in f["coeffs"]] for f in doc["power_families"]
        }
        conds = doc["conditions"]
        status = doc["verdict"]["status"]
        p, eps = doc["derived"]["p"], doc["derived"]["epsilon"]
    except MalformedCertificate:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError, AttributeError) as exc:
        raise MalformedCertificate(f"certificate does not parse: {exc!r}") from None

    try:
        fresh = certify(spec).to_dict()
    except CertifierError:
        return False
    if fresh != doc:
        return False

    # Second, independent pass over the certificate's own content.
    try:
        if not _check_matrices(doc, mats):
            return False
        M_inv = mat_inverse(mats["M"])
        for (left, k, side), coeffs in families.items():
            fam = PolyMatrix(coeffs)
            side_m = mats[side]
            left_m = Mat.identity(side_m.dim) if left == "I" else mat_inverse(mats["T"])
            for n in (-2, -1, 1, 2):
                direct = M_inv @ left_m @ mat_pow(mats["R"], p * n + k) @ side_m
                if evaluate(fam, n).scale(eps ** abs(n)) != direct:
                    return False
        for name in (A1, C3):
            if not _check_family_reports(conds[name], families, eps, p, PREDICATES[name]):
                return False
            if not _check_explicit(conds[name], mats, p, PREDICATES[name]):
                return False
        c1 = mat_inverse(mats["M"]) @ mat_inverse(mats["T"]) @ mats["M"]
        if Mat(conds[C1]["matrix"]) != c1 or conds[C1]["verdict"] != is_nonnegative_cone_map(sign_pattern(c1)):
            return False
        all_pass = (
            all(i["passed"] for i in doc["identities"])
            and all(pc["passed"] for pc in doc["preconditions"])
            and all(conds[n]["verdict"] for n in (A1, C1, C3))
        )
        for name in (A1, C3):
            c = conds[name]
            expect = all(f["holds"] for f in c["families"]) and all(e["holds"] for e in c["explicit_checks"])
            if c["verdict"] != expect:
                return False
        if (status == FREE_PRODUCT) != all_pass:
            return False
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise MalformedCertificate(f"certificate content is inconsistent: {exc!r}") from None
    return True
