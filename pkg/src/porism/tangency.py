"""Tangency classification and Apollonius solvers.

The tangency index of a circle w against a base pair (a0, a1) is the parity
of the number of interior tangencies among {w, a0} and {w, a1}: index 0 for
an even count, 1 for an odd count.  The point-circle-circle solver works by
inversion at the through-point, which turns the problem into common tangent
lines of the two image circles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NoRealSolution, NotTangent, PointOnBaseCircle
from .geometry import GEO_TOL, Circle, Inversion, Line, Point

TangencyIndex = int  # 0 or 1

INTERIOR = "interior"
EXTERIOR = "exterior"


@dataclass(frozen=True)
class TangentCircle:
    """A circle tangent to both base circles, with touch points and index."""

    circle: Circle
    touch0: Point
    touch1: Point
    index: TangencyIndex
    boundary: bool = False


def tangency_kind(a: Circle, b: Circle, tol: float = GEO_TOL) -> str:
    """Classify the tangency of two circles as interior or exterior.

    Interior means one circle lies inside the other.  Raises NotTangent when
    neither tangency condition holds within ``tol``.
    """
    d = a.center.dist(b.center)
    ext = abs(d - (a.radius + b.radius))
    int_ = abs(d - abs(a.radius - b.radius))
    if d <= tol:
        raise NotTangent("concentric circles are never tangent")
    if ext <= tol and int_ <= tol:
        raise NotTangent("degenerate tangency classification")
    if ext <= tol:
        return EXTERIOR
    if int_ <= tol:
        return INTERIOR
    raise NotTangent(f"circles are not tangent (residuals {ext:.3g}, {int_:.3g})")


def classify_index(w: Circle, a0: Circle, a1: Circle, tol: float = GEO_TOL) -> TangencyIndex:
    """Parity of interior tangencies of w with a0 and with a1."""
    interior = 0
    for base in (a0, a1):
        if tangency_kind(w, base, tol) == INTERIOR:
            interior += 1
    return interior % 2


def tangency_point(w: Circle, a: Circle, tol: float = GEO_TOL) -> Point:
    """The common point of two tangent circles, on the line of centers."""
    kind = tangency_kind(w, a, tol)
    d = w.center.dist(a.center)
    u = (a.center - w.center) * (1.0 / d)
    if kind == EXTERIOR:
        return w.center + u * w.radius
    if w.radius >= a.radius:
        return w.center + u * w.radius  # a inside w: touch point beyond a's center
    return w.center - u * w.radius  # w inside a: touch point away from a's center


def common_tangent_lines(a: Circle, b: Circle, tol: float = GEO_TOL) -> list[Line]:
    """All common tangent lines of two circles (up to four)."""
    u = b.center - a.center
    d = u.norm()
    if d <= tol:
        return []
    lines: list[Line] = []
    # signed conditions n.c_a - offset = r_a, n.c_b - offset = s * r_b;
    # s = +1 gives the outer pair, s = -1 the inner pair
    for s in (1.0, -1.0):
        k = (s * b.radius - a.radius) / d
        if abs(k) > 1.0:
            continue
        rest = math.sqrt(max(0.0, 1.0 - k * k))
        uhat = u * (1.0 / d)
        for side in (1.0, -1.0):
            n = uhat * k + uhat.perp() * (side * rest)
            offset = n.dot(a.center) - a.radius
            lines.append(Line(Point(n.x, n.y), offset))
            if rest <= tol:
                break  # the two sides coincide when the circles touch
    # deduplicate lines that coincide within tolerance
    out: list[Line] = []
    for ln in lines:
        if not any(ln.is_same(other, 1e-12) for other in out):
            out.append(ln)
    return out


def _touch_point_on_line(line: Line, c: Circle) -> Point:
    return line.foot(c.center)


def tangent_circles_through_point(
    a0: Circle,
    a1: Circle,
    p: Point,
    index: TangencyIndex,
    tol: float = GEO_TOL,
) -> list[TangentCircle]:
    """Circles through p tangent to both a0 and a1 with the given index.

    Solved by inversion centered at p: the images of the base circles are
    circles, circles through p become lines, and the sought circles
    correspond to common tangent lines of the two images.  All solutions are
    enumerated first and filtered by index afterwards.  Generically two
    circles come back; coincident solutions are merged into one flagged as
    ``boundary``.
    """
    for base in (a0, a1):
        if abs(base.power(p)) <= 2.0 * tol * base.radius:
            raise PointOnBaseCircle("through-point lies on a base circle")
    inv = Inversion(p, 1.0)
    img0 = inv.apply_circle(a0, tol)
    img1 = inv.apply_circle(a1, tol)
    assert isinstance(img0, Circle) and isinstance(img1, Circle)

    solutions: list[TangentCircle] = []
    for line in common_tangent_lines(img0, img1, tol):
        if line.distance(p) <= tol:
            continue  # the tangent "circle" through p degenerates to a line
        pre = inv.apply_line(line, tol)
        assert isinstance(pre, Circle)
        t0 = inv.apply(_touch_point_on_line(line, img0))
        t1 = inv.apply(_touch_point_on_line(line, img1))
        try:
            idx = classify_index(pre, a0, a1, max(tol, 1e-7))
        except NotTangent:
            continue
        if idx != index:
            continue
        solutions.append(TangentCircle(pre, t0, t1, idx))

    # merge coincident solutions (envelope boundary)
    merged: list[TangentCircle] = []
    for sol in solutions:
        twin = next((m for m in merged if m.circle.is_same(sol.circle, tol)), None)
        if twin is None:
            merged.append(sol)
        else:
            merged.remove(twin)
            merged.append(TangentCircle(twin.circle, twin.touch0, twin.touch1, twin.index, True))
    if not merged:
        raise NoRealSolution("no real tangent circle of the requested index through the point")
    merged.sort(key=lambda s: (s.circle.center.x, s.circle.center.y, s.circle.radius))
    return merged


def circles_through_points_tangent_to(
    p: Point,
    q: Point,
    base: Circle,
    tol: float = GEO_TOL,
) -> list[tuple[Circle, Point, str]]:
    """Circles through two points tangent to a base circle (point-point-circle).

    Solved by inversion at p: circles through p and q map to lines through
    the image of q, and the base circle maps to a circle; tangent lines from
    a point to a circle are elementary.  Returns (circle, touch point,
    tangency kind) triples.
    """
    for pt in (p, q):
        if abs(base.power(pt)) <= 2.0 * tol * base.radius:
            raise PointOnBaseCircle("through-point lies on the base circle")
    if p.dist(q) <= tol:
        raise NoRealSolution("the two through-points coincide")
    inv = Inversion(p, 1.0)
    img = inv.apply_circle(base, tol)
    assert isinstance(img, Circle)
    q_img = inv.apply(q)

    v = img.center - q_img
    d = v.norm()
    if d < img.radius - tol:
        return []  # q_img inside the image: no real tangent line
    out: list[tuple[Circle, Point, str]] = []
    # tangent lines from q_img: unit normal at angle +-alpha from v, with
    # cos(alpha) = r/d so that |n.(img.center - q_img)| = r
    base_angle = math.atan2(v.y, v.x)
    alpha = math.acos(min(1.0, img.radius / max(d, img.radius)))
    for side in (1.0, -1.0):
        n = Point(math.cos(base_angle + side * alpha), math.sin(base_angle + side * alpha))
        line = Line(n, n.dot(q_img))
        if line.distance(p) <= tol:
            continue
        pre = inv.apply_line(line, tol)
        assert isinstance(pre, Circle)
        touch = inv.apply(line.foot(img.center))
        try:
            kind = tangency_kind(pre, base, max(tol, 1e-7))
        except NotTangent:
            continue
        if not any(pre.is_same(c, tol) for c, _, _ in out):
            out.append((pre, touch, kind))
    return out
