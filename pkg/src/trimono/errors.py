"""Exception hierarchy shared by every module."""


class TrimonoError(Exception):
    """Base class for all errors raised by this package."""


class SurfaceError(TrimonoError, ValueError):
    """Invalid or unsuitable surface input."""


class NonManifoldEdge(SurfaceError):
    pass


class PinchedVertex(SurfaceError):
    pass


class DegenerateTriangle(SurfaceError):
    pass


class DuplicateTriangle(SurfaceError):
    pass


class DisconnectedInput(SurfaceError):
    pass


class NotClosed(SurfaceError):
    pass


class NotOrientable(SurfaceError):
    pass


class UnknownVertex(SurfaceError, KeyError):
    pass


class EdgeNotInTriangle(SurfaceError):
    pass


class NotAStrip(SurfaceError):
    pass


class NotDivisibleBy3(TrimonoError, ValueError):
    pass


class UnsupportedK(TrimonoError, ValueError):
    pass


class BoundaryEdge(SurfaceError):
    pass


class BoundaryVertex(SurfaceError):
    pass


class BoundaryNotSupported(SurfaceError):
    pass


class MismatchedTotals(TrimonoError, ValueError):
    pass


class NotASimpleCycle(SurfaceError):
    pass


class TouchesBoundary(SurfaceError):
    pass


class SearchExhausted(TrimonoError, RuntimeError):
    pass


class ShapeMismatch(TrimonoError, ValueError):
    pass


class NotExactlyTwoExceptional(SurfaceError):
    pass


class NotAdjacent(SurfaceError):
    pass


class NontrivialHolonomyObstruction(TrimonoError):
    """Developing is not globally consistent; ``partial`` carries what was computed."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class LinkNotSphere(TrimonoError):
    pass


class InvalidComplex(TrimonoError, ValueError):
    pass


class TheoremViolation(AssertionError):
    """A proved statement failed on a concrete input; always an implementation bug."""
