"""Exception hierarchy for tiler_scope."""

from __future__ import annotations


class TilerScopeError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(TilerScopeError, ValueError):
    """The vertex/facet data does not describe a convex polyhedron."""


class NonConvex(ValidationError):
    pass


class NonPlanarFacet(ValidationError):
    pass


class BadIncidence(ValidationError):
    pass


class EulerViolation(ValidationError):
    pass


class IndexOutOfRange(TilerScopeError, IndexError):
    pass


class NoRoom(TilerScopeError):
    """No polyhedron vertex lies strictly off the plane on either side."""


class DegeneratePolygon(TilerScopeError, ValueError):
    pass


class WrongArity(TilerScopeError, ValueError):
    pass


class ConstructionFailed(TilerScopeError):
    pass


class WrongValence(TilerScopeError, ValueError):
    pass


class EpsilonTooLarge(TilerScopeError, ValueError):
    pass


class BothTrivial(TilerScopeError):
    pass


class ParseError(TilerScopeError, ValueError):
    """Malformed mesh text. ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class MeshIndexError(TilerScopeError, IndexError):
    """A facet refers to a vertex index that does not exist."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
