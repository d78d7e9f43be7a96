"""Exception hierarchy.

``GateError`` marks a violated mathematical precondition (the CLI maps it to
exit status 2); anything else deriving from ``DezaError`` is a usage or input
problem.
"""


class DezaError(Exception):
    pass


class FieldError(DezaError, ValueError):
    pass


class Graph6Error(DezaError, ValueError):
    pass


class SizeBoundError(DezaError, ValueError):
    pass


class GateError(DezaError, ValueError):
    """A graph fails a precondition of the requested operation."""


class NotAutomorphismError(GateError):
    pass


class NotInvolutionError(GateError):
    pass


class AdjacentSwapError(GateError):
    """An involution interchanges a pair of adjacent vertices."""


class DecompositionError(GateError):
    """Raised by :func:`dezagraphs.analysis.decompose` when lemma checks fail.

    ``failed`` lists the names of the failing checks and ``checks`` holds the
    full checklist gathered before the pipeline stopped.
    """

    def __init__(self, message: str, failed=(), checks=None):
        super().__init__(message)
        self.failed = list(failed)
        self.checks = dict(checks or {})


class InvariantError(DezaError, AssertionError):
    """An internal cross-check failed; this signals a bug, not bad input."""
