"""Exception types raised by the solvers, oracle and parsers."""


class RoutingError(Exception):
    """Base class for all nlroute errors."""


class NoFeasiblePath(RoutingError):
    """No walk satisfies the hop or budget constraint."""


class ResourceExceeded(RoutingError):
    """The lattice or the stored-record table outgrew the configured cap."""

    def __init__(self, message, cap=None, required=None):
        super().__init__(message)
        self.cap = cap
        self.required = required


class EnumerationTooLarge(RoutingError):
    """The brute-force enumerator hit its walk-count safety cap."""


class InvalidWalk(RoutingError, ValueError):
    """Consecutive edges of a walk are not incident."""


class InvalidGraph(RoutingError, ValueError):
    """A graph failed validation."""

    def __init__(self, violations):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


class ParseError(RoutingError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
