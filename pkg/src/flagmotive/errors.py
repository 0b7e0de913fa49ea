"""Exception hierarchy shared by the library and the CLI."""


class MotiveError(Exception):
    """Base class; ``exit_status`` is what the CLI returns for it."""

    exit_status = 1
    kind = "error"


class ParseError(MotiveError):
    exit_status = 2
    kind = "parse"


class ValidationError(MotiveError, ValueError):
    exit_status = 3
    kind = "validation"


class ResourceError(MotiveError):
    exit_status = 4
    kind = "resource"


class InvariantViolation(MotiveError):
    """Two independent computations disagreed. Always an implementation bug."""

    exit_status = 5
    kind = "invariant"

    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload
