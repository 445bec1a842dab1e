"""Exception hierarchy shared by the certifier modules."""


class CertifierError(Exception):
    """Base class for structural failures (as opposed to verdicts)."""


class SingularMatrix(CertifierError):
    pass


class NotUnipotent(CertifierError):
    pass


class NotNilpotent(CertifierError):
    pass


class NotGaloisClosed(CertifierError):
    pass


class NotMonic(CertifierError):
    pass


class InvalidParameters(CertifierError):
    pass


class TemplateMismatch(CertifierError):
    pass


class IdentityFailure(CertifierError):
    pass


class NotQuasiUnipotentWithinBound(CertifierError):
    pass


class ExplicitRangeExceeded(CertifierError):
    pass


class MalformedCertificate(CertifierError):
    pass
