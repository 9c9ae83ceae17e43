"""Exception types shared across the library."""


class JordanError(Exception):
    """Base class for all library errors."""


class UnknownVertex(JordanError):
    pass


class BoundaryVertex(JordanError):
    pass


class IrregularVertex(JordanError):
    pass


class NotAPath(JordanError):
    pass


class NonOrientable(JordanError):
    pass


class DisconnectedComplex(JordanError):
    pass


class NotSimple(JordanError):
    pass


class EdgeMissing(JordanError):
    pass


class NoDetour(JordanError):
    pass


class BoundaryContact(JordanError):
    pass


class VertexNotOnCurve(JordanError):
    pass


class EqualEndpoints(JordanError):
    pass


class IrregularSharedVertex(JordanError):
    pass


class CurveTouchesBoundary(JordanError):
    pass


class CurveNotClosed(JordanError):
    pass


class NotAnArc(JordanError):
    pass


class NotDegenerateBoundary(JordanError):
    """The off-arc graph does not split into one cycle plus hanging trees."""


class AnchorNotOnCurve(JordanError):
    pass


class InteriorNotTriangulated(JordanError):
    pass


class InteriorNotDisk(JordanError):
    pass


class TooLarge(JordanError):
    pass


class BudgetExhausted(JordanError):
    pass


class BadParameters(JordanError):
    pass


class DegenerateBBox(JordanError):
    pass


class NotSimplePolygon(JordanError):
    pass


class LatticeTooCoarse(JordanError):
    pass


class CurveTriangleMultiCross(JordanError):
    pass


class NoCoordinates(JordanError):
    pass


class ParseError(JordanError):
    pass
