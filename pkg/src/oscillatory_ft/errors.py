"""Exception types raised by the package."""


class DegenerateTriangleError(ValueError):
    """Collinear or coincident vertices."""


class UndefinedDirectionError(ValueError):
    """A unit vector was requested between coincident points."""


class DomainError(ValueError):
    """An argument lies outside the region where a formula is defined."""


class ConfigurationError(ValueError):
    """The mechanical system is outside the oscillatory regime."""


class InsufficientDataError(ValueError):
    """A trajectory is too short for the requested estimate."""


class NonConvergenceError(RuntimeError):
    """An iterative method hit its iteration cap.

    The last (or best) iterate is kept on ``self.last`` so callers can
    still inspect it.
    """

    def __init__(self, message, last=None):
        super().__init__(message)
        self.last = last


class ParseError(ValueError):
    """Malformed CSV or config file; ``lineno`` is 1-based."""

    def __init__(self, message, lineno):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno
