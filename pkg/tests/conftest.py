from functools import lru_cache

import pytest

from pingpong_cert.casefile import builtin_case
from pingpong_cert.pingpong import certify, derive

CASES = tuple(range(1, 8))


@lru_cache(maxsize=None)
def case_spec(n):
    return builtin_case(n)


@lru_cache(maxsize=None)
def derived(n):
    return derive(case_spec(n))


@lru_cache(maxsize=None)
def certificate(n):
    return certify(case_spec(n))


@pytest.fixture(scope="session")
def case1():
    return derived(1)


ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}")
