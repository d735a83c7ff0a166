"""Exception hierarchy shared by every package.

Search verdicts (equivalent / distinct / unknown) are values, not exceptions;
the classes here are for invalid input, violated side conditions and explicit
refusals.
"""

from typing import Iterable, Optional, Sequence, Tuple


class LscatError(Exception):
    """Base class for all toolkit errors."""


# ============================================================================
# Input errors (CLI exit code 3)
# ============================================================================

class GraphInputError(LscatError):
    """Malformed graph input.

    Args:
        message: Human readable description
        position: Line number, byte offset or JSON path of the offending item
    """

    def __init__(self, message: str, position: Optional[str] = None):
        self.position = position
        if position is not None:
            message = f"{message} (at {position})"
        super().__init__(message)


class GraphFormatError(GraphInputError):
    """A line, header or document that does not parse."""


class NonSimpleGraphError(GraphInputError):
    """A loop or a duplicate edge."""


class FixtureNotFoundError(GraphInputError):
    """Unknown fixture name."""


class InputFileError(GraphInputError):
    """A path that is missing, not a file, or too large."""


class UnknownVertexError(LscatError, KeyError):
    """An operation referenced a vertex the graph does not have."""

    def __init__(self, vertices: Iterable[int]):
        self.vertices = tuple(sorted(vertices))
        super().__init__(f"unknown vertex/vertices {list(self.vertices)}")

    def __str__(self) -> str:
        return self.args[0]


# ============================================================================
# Homotopy errors
# ============================================================================

class MoveConditionError(LscatError):
    """An I-homotopy move whose side condition fails on the current graph."""

    def __init__(self, condition: str, offending: Sequence[int] = ()):
        self.condition = condition
        self.offending = tuple(offending)
        super().__init__(f"{condition}; offending subgraph on {list(self.offending)}")


class CertificateError(LscatError):
    """Replaying a homotopy certificate failed at a given step."""

    def __init__(self, step: int, reason: str):
        self.step = step
        self.reason = reason
        super().__init__(f"step {step}: {reason}")


# ============================================================================
# Refusals and checks
# ============================================================================

class SizeLimitError(LscatError):
    """An exact method refused an input above its configured limit."""

    def __init__(self, what: str, size: int, limit: int, suggestion: str = ""):
        self.size = size
        self.limit = limit
        self.suggestion = suggestion
        message = f"{what}: size {size} exceeds limit {limit}"
        if suggestion:
            message = f"{message}; {suggestion}"
        super().__init__(message)


class CoverageError(LscatError):
    """A cover that misses vertices or edges of the host graph."""

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[Tuple[int, int]] = ()):
        self.vertices = tuple(sorted(vertices))
        self.edges = tuple(sorted(edges))
        super().__init__(
            f"cover misses vertices {list(self.vertices)} and edges {[list(e) for e in self.edges]}"
        )


class NotMorseError(LscatError):
    """Morse inequalities requested for an ordering that is not Morse."""


class NonClosedFormError(LscatError):
    """A cohomology operation received a form with nonzero exterior derivative."""


class AlgebraLawError(LscatError):
    """An empirical check of a wedge-product law found a counterexample."""
