"""Exception hierarchy shared by every module."""


class PolycolorError(Exception):
    """Base class for errors raised by this package."""


class GeometryError(PolycolorError, ValueError):
    """Invalid geometric input (degenerate range, negative scaling, ...)."""


class InstanceError(PolycolorError, ValueError):
    """Malformed instance file or inconsistent instance contents."""


class GuardrailError(PolycolorError, ValueError):
    """Input exceeds a documented size guardrail."""


class InternalConsistencyError(PolycolorError, RuntimeError):
    """A proven property failed to hold; indicates a bug, not bad input."""


class SearchBudgetExceeded(InternalConsistencyError):
    """Exact coloring search gave up after exhausting its node budget."""

    def __init__(self, message, nodes=0, partial=None):
        super().__init__(message)
        self.nodes = nodes
        self.partial = dict(partial or {})
