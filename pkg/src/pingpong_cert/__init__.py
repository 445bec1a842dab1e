"""Exact ping-pong certification that symplectic hypergeometric groups split as Z * Z."""

from .errors import CertifierError
from .pingpong import CaseSpec, certify, derive, verify_certificate

__all__ = ["CaseSpec", "CertifierError", "certify", "derive", "verify_certificate"]
__version__ = "0.1.0"
