"""Exact-formula plane geometry: points, circles, lines, quadrics, inversions.

Everything here is a pure function over immutable values.  Floating point
with explicit tolerances is the contract; the default classification
tolerance ``GEO_TOL`` is expressed in scene length units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CoincidentCircles, DegenerateRestriction, GeometryError

GEO_TOL = 1e-9


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def __mul__(self, s: float) -> "Point":
        return Point(self.x * s, self.y * s)

    __rmul__ = __mul__

    def dot(self, other: "Point") -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Point") -> float:
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def norm2(self) -> float:
        return self.x * self.x + self.y * self.y

    def perp(self) -> "Point":
        """Rotate by +90 degrees."""
        return Point(-self.y, self.x)

    def unit(self) -> "Point":
        n = self.norm()
        if n == 0.0:
            raise GeometryError("cannot normalize the zero vector")
        return Point(self.x / n, self.y / n)

    def dist(self, other: "Point") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


def unit_vector(angle: float) -> Point:
    return Point(math.cos(angle), math.sin(angle))


@dataclass(frozen=True)
class Circle:
    """Circle of positive radius; the power function is derived on demand.

    The power of a point p is f(p) = |p - center|^2 - radius^2, which expands
    to p.p + linear_coeff.p + const_coeff.
    """

    center: Point
    radius: float

    def __post_init__(self):
        if not (self.radius > 0.0 and math.isfinite(self.radius)):
            raise GeometryError(f"radius must be positive and finite, got {self.radius}")

    @property
    def linear_coeff(self) -> Point:
        return self.center * -2.0

    @property
    def const_coeff(self) -> float:
        return self.center.norm2() - self.radius * self.radius

    def power(self, p: Point) -> float:
        d = p - self.center
        return d.norm2() - self.radius * self.radius

    def point_at(self, angle: float) -> Point:
        return self.center + unit_vector(angle) * self.radius

    def angle_of(self, p: Point) -> float:
        d = p - self.center
        return math.atan2(d.y, d.x)

    def contains_circle(self, other: "Circle", tol: float = GEO_TOL) -> bool:
        """True if ``other`` lies (weakly) inside this disk."""
        return self.center.dist(other.center) + other.radius <= self.radius + tol

    def is_same(self, other: "Circle", tol: float = GEO_TOL) -> bool:
        return self.center.dist(other.center) <= tol and abs(self.radius - other.radius) <= tol


@dataclass(frozen=True)
class Line:
    """Line in unit-normal/offset form: points p with normal.p = offset."""

    normal: Point
    offset: float

    def __post_init__(self):
        if abs(self.normal.norm() - 1.0) > 1e-12:
            raise GeometryError("line normal must be a unit vector")

    @classmethod
    def through_points(cls, a: Point, b: Point) -> "Line":
        n = (b - a).perp().unit()
        return cls(n, n.dot(a))

    @classmethod
    def from_normal(cls, normal: Point, offset: float) -> "Line":
        n = normal.unit()
        scale = 1.0 / normal.norm()
        return cls(n, offset * scale)

    def signed_distance(self, p: Point) -> float:
        return self.normal.dot(p) - self.offset

    def distance(self, p: Point) -> float:
        return abs(self.signed_distance(p))

    def foot(self, p: Point) -> Point:
        return p - self.normal * self.signed_distance(p)

    def direction(self) -> Point:
        return self.normal.perp()

    def point_on(self) -> Point:
        return self.normal * self.offset

    def is_same(self, other: "Line", tol: float = GEO_TOL) -> bool:
        if self.normal.dist(other.normal) <= tol and abs(self.offset - other.offset) <= tol:
            return True
        # opposite normal convention describes the same locus
        flipped = Point(-other.normal.x, -other.normal.y)
        return self.normal.dist(flipped) <= tol and abs(self.offset + other.offset) <= tol


def power(circle: Circle, p: Point) -> float:
    """Power of the point p with respect to the circle."""
    return circle.power(p)


def orientation(a: Point, b: Point, c: Point) -> int:
    """Sign of the cross product (b-a) x (c-a): +1, -1, or 0 for collinear."""
    v = (b - a).cross(c - a)
    if v > 0.0:
        return 1
    if v < 0.0:
        return -1
    return 0


def circle_circle_intersection(a: Circle, b: Circle, tol: float = GEO_TOL) -> list[Point]:
    """All real intersection points of two circles.

    Returns two points, one point (tangency within ``tol``), or none.  The
    two-point case is ordered deterministically: the point on the positive
    side of the center line comes first.
    """
    d = a.center.dist(b.center)
    if d <= tol and abs(a.radius - b.radius) <= tol:
        raise CoincidentCircles("circles coincide within tolerance")
    if d == 0.0:
        return []
    # abscissa of the radical line along the center line
    u = (b.center - a.center) * (1.0 / d)
    s = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d)
    mid = a.center + u * s
    if abs(d - (a.radius + b.radius)) <= tol or abs(d - abs(a.radius - b.radius)) <= tol:
        return [mid]
    h2 = a.radius * a.radius - s * s
    if h2 <= 0.0:
        return []
    h = math.sqrt(h2)
    return [mid + u.perp() * h, mid - u.perp() * h]


@dataclass(frozen=True)
class Quadric:
    """Conic a11 x^2 + 2 a12 x y + a22 y^2 + b1 x + b2 y + c."""

    a11: float
    a12: float
    a22: float
    b1: float
    b2: float
    c: float

    def __post_init__(self):
        if all(v == 0.0 for v in self.coeffs()):
            raise GeometryError("quadric must have a nonzero coefficient")

    def coeffs(self) -> tuple[float, float, float, float, float, float]:
        return (self.a11, self.a12, self.a22, self.b1, self.b2, self.c)

    @classmethod
    def from_circle(cls, circle: Circle) -> "Quadric":
        l = circle.linear_coeff
        return cls(1.0, 0.0, 1.0, l.x, l.y, circle.const_coeff)

    @classmethod
    def double_line(cls, line: Line) -> "Quadric":
        """The squared line (n.x - d)^2 as a rank-one quadric."""
        n, d = line.normal, line.offset
        return cls(n.x * n.x, n.x * n.y, n.y * n.y, -2.0 * d * n.x, -2.0 * d * n.y, d * d)

    def __call__(self, p: Point) -> float:
        return (self.a11 * p.x * p.x + 2.0 * self.a12 * p.x * p.y + self.a22 * p.y * p.y
                + self.b1 * p.x + self.b2 * p.y + self.c)

    def gradient(self, p: Point) -> Point:
        return Point(2.0 * self.a11 * p.x + 2.0 * self.a12 * p.y + self.b1,
                     2.0 * self.a12 * p.x + 2.0 * self.a22 * p.y + self.b2)

    def scaled(self, s: float) -> "Quadric":
        return Quadric(*(v * s for v in self.coeffs()))

    def plus(self, other: "Quadric", s: float = 1.0) -> "Quadric":
        return Quadric(*(u + s * v for u, v in zip(self.coeffs(), other.coeffs())))

    def normalized(self) -> "Quadric":
        """Scale so the largest coefficient magnitude is 1, first nonzero positive."""
        m = max(abs(v) for v in self.coeffs())
        q = self.scaled(1.0 / m)
        for v in q.coeffs():
            if v != 0.0:
                return q if v > 0.0 else q.scaled(-1.0)
        return q

    def translated(self, delta: Point) -> "Quadric":
        """Coefficients of q(p + delta) as a polynomial in p."""
        dx, dy = delta.x, delta.y
        b1 = 2.0 * self.a11 * dx + 2.0 * self.a12 * dy + self.b1
        b2 = 2.0 * self.a12 * dx + 2.0 * self.a22 * dy + self.b2
        c = (self.a11 * dx * dx + 2.0 * self.a12 * dx * dy + self.a22 * dy * dy
             + self.b1 * dx + self.b2 * dy + self.c)
        return Quadric(self.a11, self.a12, self.a22, b1, b2, c)

    def as_circle(self, tol: float = 1e-12) -> Circle | None:
        """The circle locus, if this quadric is a real circle; None otherwise."""
        scale = max(abs(v) for v in self.coeffs())
        if abs(self.a11 - self.a22) > tol * scale or abs(self.a12) > tol * scale:
            return None
        if abs(self.a11) <= tol * scale:
            return None
        b1, b2, c = self.b1 / self.a11, self.b2 / self.a11, self.c / self.a11
        center = Point(-b1 / 2.0, -b2 / 2.0)
        r2 = center.norm2() - c
        if r2 <= 0.0:
            return None
        return Circle(center, math.sqrt(r2))


def quadric_eval(q: Quadric, p: Point) -> float:
    return q(p)


def line_restriction(q: Quadric, line: Line) -> tuple[float, float, float]:
    """Coefficients (A, B, C) of q(p0 + t v) with v the unit line direction."""
    p0 = line.point_on()
    v = line.direction()
    A = q.a11 * v.x * v.x + 2.0 * q.a12 * v.x * v.y + q.a22 * v.y * v.y
    B = q.gradient(p0).dot(v)
    C = q(p0)
    return A, B, C


def line_tangency_residual(q: Quadric, line: Line, tol: float = 1e-13) -> float:
    """Discriminant of q restricted to the line; zero iff the line is tangent.

    The quadric is normalized (largest coefficient 1) and the line direction
    is unit, so the residual is scale-invariant in q and has units length^2.
    """
    A, B, C = line_restriction(q.normalized(), line)
    if abs(A) <= tol and abs(B) <= tol:
        raise DegenerateRestriction("quadric restricted to the line is constant")
    return B * B - 4.0 * A * C


@dataclass(frozen=True)
class Inversion:
    """Inversion p -> center + power * (p - center) / |p - center|^2."""

    center: Point
    inv_power: float

    def __post_init__(self):
        if self.inv_power == 0.0 or not math.isfinite(self.inv_power):
            raise GeometryError("inversion power must be finite and nonzero")

    def apply(self, p: Point) -> Point:
        d = p - self.center
        n2 = d.norm2()
        if n2 == 0.0:
            raise GeometryError("inversion center has no image")
        return self.center + d * (self.inv_power / n2)

    def apply_circle(self, c: Circle, tol: float = GEO_TOL) -> Circle | Line:
        """Image of a circle: a circle, or a line when c passes through the center."""
        a = c.center - self.center
        t = a.norm2() - c.radius * c.radius  # power of the inversion center w.r.t. c
        if abs(t) <= 2.0 * tol * c.radius:
            # circle through the center maps to a line perpendicular to the center ray
            n = a.unit()
            offset = n.dot(self.center) + self.inv_power / (2.0 * c.radius)
            return Line(n, offset)
        s = self.inv_power / t
        center = self.center + a * s
        return Circle(center, abs(s) * c.radius)

    def apply_line(self, line: Line, tol: float = GEO_TOL) -> Circle | Line:
        """Image of a line: itself if through the center, else a circle through it."""
        d = line.signed_distance(self.center)
        if abs(d) <= tol:
            return line
        # the image passes through the inversion center and through the image
        # of the foot of the perpendicular; those two points are diametral
        radius = abs(self.inv_power) / (2.0 * abs(d))
        center = self.center - line.normal * (self.inv_power / (2.0 * d))
        return Circle(center, radius)


def invert_circle(inv: Inversion, c: Circle, tol: float = GEO_TOL) -> Circle | Line:
    return inv.apply_circle(c, tol)
