"""Exception hierarchy shared by every module."""


class LatboundError(Exception):
    """Base class for all errors raised by this package."""


class ContractError(LatboundError, ValueError):
    """A precondition of an operation was violated (bad dimensions, bad parameters)."""


class DegenerateBodyError(LatboundError):
    """The operation needs a full-dimensional body."""


class UnsupportedDimensionError(LatboundError):
    pass


class ResourceLimitError(LatboundError):
    def __init__(self, message, cap=None):
        super().__init__(message)
        self.cap = cap


class EmptyIntersectionError(LatboundError):
    pass


class GenerationError(LatboundError):
    pass


class NotApplicable(LatboundError):
    """A bound does not apply to the given profile.

    ``verdict`` carries what can be said about the count instead, e.g.
    ``"count <= 1"`` when every relevant minimum exceeds the threshold.
    """

    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class BoundViolation(LatboundError):
    """An exact lattice-point count exceeded a proven (or conjectured) bound."""

    def __init__(self, message, dump=""):
        super().__init__(message)
        self.dump = dump


class IndeterminateComparison(LatboundError):
    pass


class ParseError(ContractError):
    def __init__(self, message, line=None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line
