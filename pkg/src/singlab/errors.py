"""Exception hierarchy shared by every module.

Each class carries the CLI exit code it maps to.
"""


class SingLabError(Exception):
    exit_code = 1


class ParseError(SingLabError):
    exit_code = 2


class ValidationError(SingLabError):
    exit_code = 3


class DomainError(ValidationError):
    """Argument outside the mathematical domain of an operation."""


class CapabilityError(SingLabError):
    """Request outside what the tool can compute (k > l, dimension cap, ...)."""

    exit_code = 4


class UnboundedCovolumeError(CapabilityError):
    pass


class DegenerateError(SingLabError):
    """Polytope is lower-dimensional."""

    exit_code = 4


class NonStabilizationError(SingLabError):
    exit_code = 5


class InternalError(SingLabError):
    """A theorem-backed verdict came out false; indicates a bug."""

    exit_code = 70
