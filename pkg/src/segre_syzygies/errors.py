"""Exception types shared across the package."""

from .linalg import CompositionNonzero


class InvalidParameters(ValueError):
    """Parameters outside the range an operation is defined for."""


class BothModuleElements(ValueError):
    """Attempt to multiply two elements of a scroll module (c > 0 on both sides)."""


class OutOfTheoremRange(ValueError):
    """A closed formula was evaluated outside the range where it holds."""


class OutOfImplementedRange(ValueError):
    """A construction was requested at an index where it is not built."""


class InvalidPointSet(ValueError):
    """Point configuration for a cocycle is malformed."""


__all__ = ["CompositionNonzero", "InvalidParameters", "BothModuleElements",
           "OutOfTheoremRange", "OutOfImplementedRange", "InvalidPointSet"]
