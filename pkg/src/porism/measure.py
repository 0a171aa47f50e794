"""The pair measure 1/sqrt(|f0 f1|), arc-mass quadrature, and its identity checks.

A density is generated by a pair of circles (the general case), a single
circle (the polygon-closure limit), a quartic curve, or a single circle with
the reciprocal-power law (the coaxial-chain case).  Restricted to a circle,
each density defines a measure whose arc masses are computed by
singularity-splitting adaptive quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from ._quadrature import integrate_panels
from .errors import (
    DegenerateTriangle,
    GeometryError,
    PointNotOnCircle,
    QuadratureFailure,
)
from .geometry import GEO_TOL, Circle, Line, Point, circle_circle_intersection
from .tangency import TangentCircle, tangent_circles_through_point

QUAD_TOL = 1e-10

CCW = "ccw"
CW = "cw"

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PairDensity:
    """Density on the plane whose restriction to any circle is an invariant measure.

    ``kind`` selects the law: "pair" and "single" use 1/sqrt(|product of
    powers|), "reciprocal" uses 1/|f0| (the law that is invariant when the
    carrier belongs to the pencil of the pair), and "curve" uses
    1/sqrt(|F|) for a quartic or conic F supplied as a callable.
    """

    kind: str
    circles: tuple[Circle, ...] = ()
    curve: Callable[[Point], float] | None = None

    @classmethod
    def of_pair(cls, a0: Circle, a1: Circle) -> "PairDensity":
        return cls("pair", (a0, a1))

    @classmethod
    def of_single(cls, a0: Circle) -> "PairDensity":
        return cls("single", (a0,))

    @classmethod
    def reciprocal_power(cls, a0: Circle) -> "PairDensity":
        return cls("reciprocal", (a0,))

    @classmethod
    def of_curve(cls, curve: Callable[[Point], float]) -> "PairDensity":
        return cls("curve", (), curve)

    @property
    def pair(self) -> tuple[Circle, Circle]:
        if self.kind != "pair":
            raise GeometryError("density is not generated by a pair of circles")
        return self.circles[0], self.circles[1]

    def source_value(self, p: Point) -> float:
        """The defining polynomial value at p (product of powers or F)."""
        if self.kind == "curve":
            return self.curve(p)
        v = 1.0
        for c in self.circles:
            v *= c.power(p)
        return v

    def rho(self, p: Point) -> float:
        v = self.source_value(p)
        if v == 0.0:
            return math.inf
        if self.kind == "reciprocal":
            return 1.0 / abs(v)
        return 1.0 / math.sqrt(abs(v))


def rho(d: PairDensity, p: Point) -> float:
    """Density value at p; +inf exactly on the source curve."""
    return d.rho(p)


def _intersection_angles(delta: Circle, other: Circle) -> list[float]:
    """Angles on delta of its intersections with another circle."""
    d = delta.center.dist(other.center)
    if d == 0.0:
        if abs(delta.radius - other.radius) < 1e-14 * delta.radius:
            raise QuadratureFailure("density is singular on the whole carrier circle")
        return []
    cos_a = (d * d + delta.radius * delta.radius - other.radius * other.radius) / (
        2.0 * d * delta.radius
    )
    if abs(cos_a) > 1.0 + 1e-12:
        return []
    cos_a = max(-1.0, min(1.0, cos_a))
    base = delta.angle_of(other.center)
    half = math.acos(cos_a)
    if half == 0.0 or half == math.pi:
        return [base + half]
    return [base - half, base + half]


def _curve_singular_angles(d: PairDensity, delta: Circle, n_scan: int = 1024) -> list[float]:
    """Numeric zero scan of the curve restriction to the carrier circle."""
    import scipy.optimize as opt

    g = lambda theta: d.source_value(delta.point_at(theta))
    thetas = [k * _TWO_PI / n_scan for k in range(n_scan + 1)]
    vals = [g(t) for t in thetas]
    scale = max(abs(v) for v in vals) or 1.0
    roots: list[float] = []
    for (t0, v0), (t1, v1) in zip(zip(thetas, vals), zip(thetas[1:], vals[1:])):
        if v0 == 0.0:
            roots.append(t0)
        elif v0 * v1 < 0.0:
            roots.append(opt.brentq(g, t0, t1, xtol=1e-14))
    # tangential zeros: local minima of |g| that dip to zero without a sign change
    for k in range(1, n_scan):
        a, b, c = abs(vals[k - 1]), abs(vals[k]), abs(vals[k + 1])
        if b <= a and b <= c and b < 1e-6 * scale:
            res = opt.minimize_scalar(
                lambda t: abs(g(t)), bounds=(thetas[k - 1], thetas[k + 1]), method="bounded",
                options={"xatol": 1e-14},
            )
            if abs(res.fun) < 1e-11 * scale and not any(abs(res.x - r) < 1e-9 for r in roots):
                roots.append(float(res.x))
    return roots


def singular_angles(d: PairDensity, delta: Circle) -> list[float]:
    """Angles on the carrier circle where the density blows up."""
    if d.kind == "curve":
        angles = _curve_singular_angles(d, delta)
    else:
        angles = []
        for c in d.circles:
            angles.extend(_intersection_angles(delta, c))
    return sorted(a % _TWO_PI for a in angles)


@dataclass(frozen=True)
class ArcMass:
    """Mass of an oriented arc, the total carrier mass, and the step mass if known."""

    value: float
    total: float
    step: float | None = None
    error: float = 0.0


def _require_on_circle(delta: Circle, p: Point, tol: float) -> float:
    if abs(delta.power(p)) > 2.0 * tol * delta.radius:
        raise PointNotOnCircle(f"point {p} is not on the carrier circle")
    return delta.angle_of(p)


def _mass_between_angles(d: PairDensity, delta: Circle, lo: float, hi: float, tol: float) -> tuple[float, float]:
    """Mass of the ccw arc from angle lo to angle hi (hi >= lo)."""
    if hi <= lo:
        return 0.0, 0.0
    f = lambda theta: d.rho(delta.point_at(theta)) * delta.radius
    cuts = sorted({lo, hi})
    for s in singular_angles(d, delta):
        for shift in (-_TWO_PI, 0.0, _TWO_PI, 2 * _TWO_PI):
            t = s + shift
            if lo < t < hi:
                cuts.append(t)
    return integrate_panels(f, sorted(set(cuts)), tol)


@lru_cache(maxsize=512)
def total_mass(d: PairDensity, delta: Circle, tol: float = QUAD_TOL) -> float:
    """Mass of the full carrier circle."""
    value, _ = _mass_between_angles(d, delta, 0.0, _TWO_PI, tol)
    return value


def arc_mass(
    d: PairDensity,
    delta: Circle,
    start: Point,
    end: Point,
    direction: str = CCW,
    tol: float = QUAD_TOL,
    geo_tol: float = GEO_TOL,
) -> ArcMass:
    """Mass of the oriented arc of the carrier circle from start to end.

    The arc is traversed counterclockwise or clockwise per ``direction``;
    coincident endpoints give the empty arc.  Inverse-square-root crossings
    of the source circles inside the arc are split out and integrated with
    the singularity-neutralizing substitution.
    """
    if direction not in (CCW, CW):
        raise GeometryError(f"unknown direction {direction!r}")
    ta = _require_on_circle(delta, start, geo_tol)
    tb = _require_on_circle(delta, end, geo_tol)
    if direction == CW:
        ta, tb = tb, ta
    span = (tb - ta) % _TWO_PI
    if start.dist(end) <= geo_tol:
        span = 0.0
    value, err = _mass_between_angles(d, delta, ta, ta + span, tol)
    return ArcMass(value=value, total=total_mass(d, delta, tol), error=err)


def signed_arc_length(delta: Circle, start: Point, end: Point) -> float:
    """Arc length from start to end along the short way, signed ccw-positive."""
    ta = delta.angle_of(start)
    tb = delta.angle_of(end)
    diff = (tb - ta + math.pi) % _TWO_PI - math.pi
    return diff * delta.radius


@dataclass(frozen=True)
class ZigzagConfig:
    """Concentric base pair with the derived mid circle and jump length."""

    alpha0: Circle
    alpha1: Circle
    mid_circle: Circle
    jump: float

    @classmethod
    def from_pair(cls, a0: Circle, a1: Circle, tol: float = GEO_TOL) -> "ZigzagConfig":
        if a0.center.dist(a1.center) > tol:
            raise GeometryError("the base circles must be concentric")
        mid = Circle(a0.center, 0.5 * (a0.radius + a1.radius))
        return cls(a0, a1, mid, 0.5 * abs(a1.radius - a0.radius))

    def witness_point(self, p: Point) -> Point:
        """A point z on the mid circle at jump distance from p."""
        pts = circle_circle_intersection(self.mid_circle, Circle(p, self.jump))
        if not pts:
            raise DegenerateTriangle("no jump target exists at this radius")
        return pts[0]


def black_howland(z: ZigzagConfig, p: Point) -> float:
    """Reciprocal double triangle area law at p on any carrier circle.

    The triangle has side lengths |p - c0|, (r0+r1)/2 and |r1-r0|/2; its
    doubled area reduces to sqrt((r1^2 - x^2)(x^2 - r0^2)) / 2.
    """
    r0, r1 = sorted((z.alpha0.radius, z.alpha1.radius))
    x2 = (p - z.alpha0.center).norm2()
    s = (r1 * r1 - x2) * (x2 - r0 * r0)
    scale = (r1 * r1 - r0 * r0) ** 2
    if s < -1e-12 * scale:
        raise DegenerateTriangle("point radius outside the annulus")
    if s <= 0.0:
        return math.inf
    return 2.0 / math.sqrt(s)


def black_howland_cross(z: ZigzagConfig, p: Point) -> float:
    """The same law computed from the witness point via the cross product."""
    w = z.witness_point(p)
    area2 = abs((p - z.alpha0.center).cross(p - w))
    if area2 == 0.0:
        return math.inf
    return 1.0 / area2


@dataclass(frozen=True)
class Prop1Report:
    samples_used: int
    mean_product: float
    max_rel_deviation: float


def verify_prop1(
    w: TangentCircle,
    d: PairDensity,
    samples: int = 64,
    angular_margin: float = 0.1,
) -> Prop1Report:
    """Check that rho times the distance to the touch chord is constant on w.

    Samples near the touch points are excluded: there both the density and
    the distance degenerate to an indeterminate form.
    """
    if samples < 3:
        raise GeometryError("need at least 3 samples")
    circle = w.circle
    if w.touch0.dist(w.touch1) <= 1e-12:
        raise GeometryError("touch points coincide; the touch chord is undefined")
    chord = Line.through_points(w.touch0, w.touch1)
    skip = [circle.angle_of(w.touch0), circle.angle_of(w.touch1)]
    values: list[float] = []
    for k in range(samples):
        theta = (k + 0.5) * _TWO_PI / samples
        if any(abs((theta - s + math.pi) % _TWO_PI - math.pi) < angular_margin for s in skip):
            continue
        p = circle.point_at(theta)
        r = d.rho(p)
        h = chord.distance(p)
        if not math.isfinite(r) or h <= 1e-12 * circle.radius:
            continue
        values.append(r * h)
    if len(values) < 3:
        raise GeometryError("not enough non-singular samples on the circle")
    mean = sum(values) / len(values)
    dev = max(abs(v - mean) for v in values) / abs(mean)
    return Prop1Report(len(values), mean, dev)


@dataclass(frozen=True)
class InvarianceReport:
    residual: float
    residual_halved: float
    halving_ratio: float
    skipped: bool = False
    reason: str = ""


def _nearest(circles: list[TangentCircle], target: Circle) -> TangentCircle:
    return min(
        circles,
        key=lambda s: s.circle.center.dist(target.center) + abs(s.circle.radius - target.radius),
    )


def _chord_displacement_residual(
    d: PairDensity,
    delta: Circle,
    w: TangentCircle,
    eps: float,
    pair: tuple[Circle, Circle],
) -> float | None:
    pts = circle_circle_intersection(w.circle, delta)
    if len(pts) != 2:
        return None
    x, y = pts
    x_new = delta.point_at(delta.angle_of(x) + eps / delta.radius)
    cands = tangent_circles_through_point(pair[0], pair[1], x_new, w.index)
    w_new = _nearest(cands, w.circle)
    pts_new = circle_circle_intersection(w_new.circle, delta)
    if len(pts_new) != 2:
        return None
    y_new = min(pts_new, key=lambda p: p.dist(y))
    dx = abs(signed_arc_length(delta, x, x_new))
    dy = abs(signed_arc_length(delta, y, y_new))
    lhs = d.rho(x) * dx
    rhs = d.rho(y) * dy
    return abs(lhs - rhs) / abs(lhs)


def verify_invariance(
    d: PairDensity,
    delta: Circle,
    w: TangentCircle,
    eps_perturb: float = 1e-4,
    base_pair: tuple[Circle, Circle] | None = None,
) -> InvarianceReport:
    """Finite-difference check of rho(x)|dx| = rho(y)|dy| under chord perturbation.

    A nearby tangent circle of the same index is built through a point
    displaced along the carrier by eps_perturb; the residual must shrink
    linearly, which is verified by halving the displacement.
    """
    pair = base_pair if base_pair is not None else d.pair
    r1 = _chord_displacement_residual(d, delta, w, eps_perturb, pair)
    if r1 is None:
        return InvarianceReport(math.nan, math.nan, math.nan, True, "tangent or disjoint chord")
    r2 = _chord_displacement_residual(d, delta, w, 0.5 * eps_perturb, pair)
    if r2 is None:
        return InvarianceReport(math.nan, math.nan, math.nan, True, "tangent or disjoint chord")
    return InvarianceReport(r1, r2, r2 / r1 if r1 else 0.0)


@dataclass(frozen=True)
class LimitCheckReport:
    radii: tuple[float, ...]
    deviations: tuple[float, ...]
    decreasing: bool


def jacobi_bertrand_limit_check(
    a0: Circle,
    delta: Circle,
    r1_sequence: tuple[float, ...] | list[float],
    a1_center: Point | None = None,
    samples: int = 256,
) -> LimitCheckReport:
    """Scaled pair density against the single-circle law as the outer radius grows."""
    radii = tuple(r1_sequence)
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise GeometryError("outer radii must be increasing")
    center = a1_center if a1_center is not None else a0.center
    devs = []
    for r1 in radii:
        d = PairDensity.of_pair(a0, Circle(center, r1))
        worst = 0.0
        for k in range(samples):
            p = delta.point_at((k + 0.5) * _TWO_PI / samples)
            f0 = a0.power(p)
            if abs(f0) < 1e-9:
                continue
            worst = max(worst, abs(r1 * d.rho(p) - 1.0 / math.sqrt(abs(f0))))
        devs.append(worst)
    decreasing = all(b < a for a, b in zip(devs, devs[1:]))
    return LimitCheckReport(radii, tuple(devs), decreasing)
