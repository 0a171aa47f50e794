"""Exception hierarchy for geometric and numerical failure modes."""


class GeometryError(Exception):
    """Base class for all errors raised by this package."""


class CoincidentCircles(GeometryError):
    """Two circles agree in center and radius within tolerance."""


class DegenerateRestriction(GeometryError):
    """A quadric restricted to a line is constant; tangency is undefined."""


class NotTangent(GeometryError):
    """A circle expected to be tangent fails the tangency test."""


class NotTangentConfiguration(GeometryError):
    """A circle that must touch another intersects it instead."""


class PointOnBaseCircle(GeometryError):
    """The through-point of a tangency solve lies on a base circle."""


class NoRealSolution(GeometryError):
    """A tangency solve has no real solution of the requested kind."""


class PointNotOnCircle(GeometryError):
    """An arc endpoint does not lie on the carrier circle."""


class QuadratureFailure(GeometryError):
    """Adaptive quadrature could not reach the requested tolerance."""


class DegenerateTriangle(GeometryError):
    """Triangle side lengths violate the triangle inequality."""


class SeriesBlocked(GeometryError):
    """A circular series cannot be extended past the current step."""


class NotNested(GeometryError):
    """An operation requires the nested configuration and it fails."""


class AssumptionViolated(GeometryError):
    """The start circle does not lie inside the outer base circle."""


class NormalizationFailed(GeometryError):
    """No inversion center producing the required containment was found."""


class ImaginaryMember(GeometryError):
    """A pencil member has negative squared radius."""


class DegeneratePair(GeometryError):
    """A pencil pair degenerates (a member coincides with the carrier)."""


class NoTangentMember(GeometryError):
    """No real pencil member is tangent to a given circle."""


class NoRealAp(GeometryError):
    """The tangency condition for the pencil parameter has no real root."""


class AmbiguousAp(GeometryError):
    """The tangency condition has several roots and no second chord to discriminate."""

    def __init__(self, message, candidates):
        super().__init__(message)
        self.candidates = candidates


class NotDoublyTangent(GeometryError):
    """A circle is not doubly tangent to the given quartic curve."""


class NoRealPair(GeometryError):
    """No real circle pair reproducing the target quadric was found."""


class LambdaZero(GeometryError):
    """A quartic with zero leading coefficient has inconsistent degree bookkeeping."""


class SceneError(GeometryError):
    """A scene file fails schema validation."""
