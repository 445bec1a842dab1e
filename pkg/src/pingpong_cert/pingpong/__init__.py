"""Ping-pong certification of free-product splittings."""

from .normal_form import CaseSpec, DerivedData, derive, detect_quasi_unipotent, normal_form
from .conditions import build_power_family, check_A1, check_C1, check_C3
from .certificate import Certificate, certify, verify_certificate
