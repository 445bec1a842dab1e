"""Reading case definitions (built-in data files and user JSON)."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .exactlin import Mat, to_rational
from .pingpong.normal_form import DIM, CaseSpec

BUILTIN_CASES = tuple(range(1, 8))


class CaseFileError(ValueError):
    """The document does not describe a well-formed case."""


def _rational_list(value, name: str, length: int):
    if not isinstance(value, list) or len(value) != length:
        raise CaseFileError(f"{name} must be an array of {length} rational strings")
    try:
        return tuple(to_rational(x) for x in value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise CaseFileError(f"{name}: {exc}") from None


def _positive_int(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise CaseFileError(f"{name} must be a positive integer")
    return value


def parse_case(doc: dict, *, require_v: bool = True) -> CaseSpec:
    if not isinstance(doc, dict):
        raise CaseFileError("case file must hold a JSON object")
    if not isinstance(doc.get("id"), str):
        raise CaseFileError("id must be a string")
    beta = _rational_list(doc.get("beta"), "beta", DIM)
    K = doc.get("K")
    if (
        not isinstance(K, list)
        or len(K) != DIM
        or any(not isinstance(r, list) or len(r) != DIM for r in K)
        or any(isinstance(x, bool) or not isinstance(x, int) for r in K for x in r)
    ):
        raise CaseFileError(f"K must be a {DIM}x{DIM} array of integers")
    v = None
    if doc.get("v") is not None:
        v = _rational_list(doc["v"], "v", DIM)
        if not any(v):
            raise CaseFileError("v must be nonzero")
    elif require_v:
        raise CaseFileError("v is required")
    adc = doc.get("expected_adc")
    if adc is not None:
        if not isinstance(adc, list) or len(adc) != 3:
            raise CaseFileError("expected_adc must be an array of 3 integers")
        adc = tuple(_positive_int(x, "expected_adc") for x in adc)
    kwargs = {}
    for key in ("pmax", "explicit_cap"):
        if doc.get(key) is not None:
            kwargs[key] = _positive_int(doc[key], key)
    return CaseSpec(id=doc["id"], beta=beta, K=Mat(K), v=v, expected_adc=adc, **kwargs)


def load_case_file(path: str | Path, *, require_v: bool = True) -> CaseSpec:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise CaseFileError(f"{path}: invalid JSON ({exc})") from None
    return parse_case(doc, require_v=require_v)


def builtin_case_text(n: int) -> str:
    if n not in BUILTIN_CASES:
        raise CaseFileError(f"built-in cases are numbered 1..{len(BUILTIN_CASES)}")
    return resources.files("pingpong_cert.data").joinpath(f"case{n}.json").read_text(encoding="utf-8")


def builtin_case(n: int) -> CaseSpec:
    return parse_case(json.loads(builtin_case_text(n)))
