"""Exception hierarchy shared by every module."""


class ClassExpError(Exception):
    """Base class; ``tag`` is the short name used in reports."""

    tag = "Error"

    def __init__(self, message="", **details):
        super().__init__(message or self.tag)
        self.details = details


class FieldError(ClassExpError):
    tag = "FieldError"


class DivisionByZero(FieldError, ZeroDivisionError):
    tag = "DivisionByZero"


class CapExceeded(ClassExpError):
    tag = "CapExceeded"


class SingularModel(ClassExpError):
    tag = "SingularModel"


class BadDegree(ClassExpError):
    tag = "BadDegree"


class Char2NeedsH(ClassExpError):
    tag = "Char2NeedsH"


class NotWeierstrass(ClassExpError):
    tag = "NotWeierstrass"


class JacobianUnavailable(ClassExpError):
    """The curve has no odd model over the base field."""

    tag = "jacobian_unavailable"


class ConsistencyFailure(ClassExpError):
    tag = "ConsistencyFailure"


class SampledProfileUnsupported(ClassExpError):
    tag = "SampledProfileUnsupported"


class PreconditionViolated(ClassExpError):
    tag = "PreconditionViolated"


class NoPrimeInInterval(ClassExpError):
    tag = "NoPrimeInInterval"


class InseparableUnsupported(ClassExpError):
    tag = "InseparableUnsupported"


class NotSquarefree(ClassExpError):
    tag = "NotSquarefree"


class RootAtZero(ClassExpError):
    tag = "RootAtZero"


class NoSquareRoot(ClassExpError):
    tag = "NoSquareRoot"
