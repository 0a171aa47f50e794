"""Circular series: construction, closure detection, rotation numbers,
and the orientation-signed perturbation invariant.

A series starts from a circle tangent to both bases that cuts the carrier
circle in a chord; each step passes to the other tangent circle through the
leading chord point.  Closure is detected by matching both the circle and
the chord point of the first step within the closure tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .errors import (
    AssumptionViolated,
    NormalizationFailed,
    NotNested,
    NotTangent,
    NotTangentConfiguration,
    PointOnBaseCircle,
    NoRealSolution,
    SeriesBlocked,
)
from .geometry import Circle, GEO_TOL, Inversion, Point, circle_circle_intersection, orientation
from .measure import (
    CCW,
    CW,
    PairDensity,
    QUAD_TOL,
    arc_mass,
    signed_arc_length,
    total_mass,
)
from .tangency import TangentCircle, classify_index, tangency_kind, tangent_circles_through_point

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Tolerances:
    geo: float = GEO_TOL
    quad: float = QUAD_TOL
    close: float = 1e-8


@dataclass(frozen=True)
class Scene:
    """Base pair, carrier circle, tangency index, and tolerance profile."""

    alpha0: Circle
    alpha1: Circle
    delta: Circle
    index: int = 1
    tol: Tolerances = field(default_factory=Tolerances)

    def __post_init__(self):
        if self.index not in (0, 1):
            raise ValueError("tangency index must be 0 or 1")

    def density(self) -> PairDensity:
        return PairDensity.of_pair(self.alpha0, self.alpha1)

    def is_nested(self) -> bool:
        """alpha0 strictly inside delta strictly inside alpha1."""
        t = self.tol.geo
        inner = self.delta.center.dist(self.alpha0.center) + self.alpha0.radius < self.delta.radius - t
        outer = self.alpha1.center.dist(self.delta.center) + self.delta.radius < self.alpha1.radius - t
        return inner and outer


@dataclass(frozen=True)
class SeriesStep:
    omega: TangentCircle
    start: Point
    end: Point
    orient: str  # which traversal of the chord arc lies inside omega


@dataclass(frozen=True)
class CircularSeries:
    scene: Scene
    steps: tuple[SeriesStep, ...]
    direction: str

    @property
    def points(self) -> list[Point]:
        return [s.start for s in self.steps] + [self.steps[-1].end]

    @property
    def circles(self) -> list[Circle]:
        return [s.omega.circle for s in self.steps]


@dataclass(frozen=True)
class ClosureReport:
    closed: bool
    n: int | None
    winding: int | None
    residual: float
    stop_reason: str
    step_masses: tuple[float, ...] = ()
    signed_mass: float = 0.0
    total_mass: float = 0.0


def _arc_midpoint_inside(delta: Circle, w: Circle, a: Point, b: Point, direction: str) -> bool:
    """True if the ``direction`` arc of delta from a to b lies inside w."""
    ta, tb = delta.angle_of(a), delta.angle_of(b)
    span = (tb - ta) % _TWO_PI if direction == CCW else -((ta - tb) % _TWO_PI)
    mid = delta.point_at(ta + 0.5 * span)
    return w.power(mid) < 0.0


def chord_points(w: Circle, delta: Circle, direction: str, tol: float = GEO_TOL) -> tuple[Point, Point]:
    """Order the two carrier intersections so the step moves with ``direction``.

    Returns (trailing, leading): the ``direction`` arc from trailing to
    leading is the one cut out inside w.
    """
    pts = circle_circle_intersection(w, delta, tol)
    if len(pts) != 2:
        raise SeriesBlocked("the circle does not cut the carrier in a proper chord")
    p, q = pts
    if _arc_midpoint_inside(delta, w, p, q, direction):
        return p, q
    return q, p


def start_circle(scene: Scene, at: Point, direction: str = CCW) -> TangentCircle:
    """The tangent circle through a carrier point whose step moves with ``direction``."""
    cands = tangent_circles_through_point(scene.alpha0, scene.alpha1, at, scene.index, scene.tol.geo)
    for cand in cands:
        pts = circle_circle_intersection(cand.circle, scene.delta, scene.tol.geo)
        if len(pts) != 2:
            continue
        other = max(pts, key=lambda p: p.dist(at))
        if _arc_midpoint_inside(scene.delta, cand.circle, at, other, direction):
            return cand
    raise NoRealSolution("no tangent circle through the point advances in that direction")


def _validate_start(scene: Scene, w1: TangentCircle) -> None:
    idx = classify_index(w1.circle, scene.alpha0, scene.alpha1, max(scene.tol.geo, 1e-7))
    if idx != scene.index:
        raise NotTangent(f"start circle has tangency index {idx}, scene expects {scene.index}")


def _step_orient(scene: Scene, w: Circle, a: Point, b: Point) -> str:
    return CCW if _arc_midpoint_inside(scene.delta, w, a, b, CCW) else CW


def next_step(series: CircularSeries) -> CircularSeries:
    """Extend the series by one circle through the current leading point."""
    scene = series.scene
    last = series.steps[-1]
    at = last.end
    try:
        cands = tangent_circles_through_point(
            scene.alpha0, scene.alpha1, at, scene.index, scene.tol.geo
        )
    except (NoRealSolution, PointOnBaseCircle) as exc:
        raise SeriesBlocked(f"tangency solve failed at the leading point: {exc}") from exc
    if any(c.boundary for c in cands):
        raise SeriesBlocked("the two tangent circles through the point coincide")
    remaining = [c for c in cands if not c.circle.is_same(last.omega.circle, scene.tol.geo)]
    if len(remaining) != 1:
        raise SeriesBlocked(
            f"expected exactly one continuation circle, found {len(remaining)}"
        )
    nxt = remaining[0]
    pts = circle_circle_intersection(nxt.circle, scene.delta, scene.tol.geo)
    if len(pts) != 2:
        raise SeriesBlocked("continuation circle does not cut the carrier twice")
    near = min(pts, key=lambda p: p.dist(at))
    far = max(pts, key=lambda p: p.dist(at))
    if near.dist(at) > 1e4 * scene.tol.geo:
        raise SeriesBlocked("continuation circle drifted off the chord point")
    step = SeriesStep(nxt, at, far, _step_orient(scene, nxt.circle, at, far))
    return CircularSeries(scene, series.steps + (step,), series.direction)


def begin_series(
    scene: Scene,
    w1: TangentCircle,
    start: Point | None = None,
    direction: str = CCW,
) -> CircularSeries:
    _validate_start(scene, w1)
    if start is None:
        trailing, leading = chord_points(w1.circle, scene.delta, direction, scene.tol.geo)
    else:
        pts = circle_circle_intersection(w1.circle, scene.delta, scene.tol.geo)
        if len(pts) != 2:
            raise SeriesBlocked("start circle does not cut the carrier in a chord")
        trailing = min(pts, key=lambda p: p.dist(start))
        if trailing.dist(start) > 1e4 * scene.tol.geo:
            raise SeriesBlocked("start point is not an intersection of the start circle")
        leading = max(pts, key=lambda p: p.dist(start))
        direction = (
            CCW if _arc_midpoint_inside(scene.delta, w1.circle, trailing, leading, CCW) else CW
        )
    step = SeriesStep(w1, trailing, leading, _step_orient(scene, w1.circle, trailing, leading))
    return CircularSeries(scene, (step,), direction)


def _closure_residual(a: SeriesStep, b: SeriesStep) -> float:
    return max(
        a.omega.circle.center.dist(b.omega.circle.center),
        abs(a.omega.circle.radius - b.omega.circle.radius),
        a.start.dist(b.start),
    )


def run_series(
    scene: Scene,
    w1: TangentCircle,
    max_steps: int = 256,
    start: Point | None = None,
    direction: str = CCW,
    compute_masses: bool = True,
) -> tuple[CircularSeries, ClosureReport]:
    """Iterate the series up to max_steps, reporting closure and winding.

    Winding accumulates signed step masses (positive for counterclockwise
    chord arcs), so a closed series reports how many full turns of the
    carrier mass it swallowed.
    """
    series = begin_series(scene, w1, start, direction)
    density = scene.density() if compute_masses else None
    masses: list[float] = []
    signed = 0.0
    total = total_mass(density, scene.delta, scene.tol.quad) if compute_masses else 0.0

    def account(step: SeriesStep) -> None:
        nonlocal signed
        if density is None:
            return
        m = arc_mass(
            density, scene.delta, step.start, step.end, step.orient,
            scene.tol.quad, scene.tol.geo,
        ).value
        masses.append(m)
        signed += m if step.orient == CCW else -m

    account(series.steps[0])
    stop_reason = "max_steps"
    closed = False
    n = None
    residual = math.inf
    for _ in range(max_steps):
        try:
            series = next_step(series)
        except SeriesBlocked as exc:
            stop_reason = f"blocked: {exc}"
            break
        new = series.steps[-1]
        res = _closure_residual(new, series.steps[0])
        if res <= scene.tol.close:
            closed = True
            n = len(series.steps) - 1
            residual = res
            stop_reason = "closed"
            series = CircularSeries(scene, series.steps[:-1], series.direction)
            break
        account(new)
    winding = None
    if closed and compute_masses and total > 0.0:
        winding = round(signed / total)
    report = ClosureReport(
        closed=closed,
        n=n,
        winding=winding,
        residual=residual,
        stop_reason=stop_reason,
        step_masses=tuple(masses),
        signed_mass=signed,
        total_mass=total,
    )
    return series, report


def step_masses(series: CircularSeries) -> list[float]:
    """Unsigned chord-arc masses of every step."""
    scene = series.scene
    density = scene.density()
    return [
        arc_mass(density, scene.delta, s.start, s.end, s.orient, scene.tol.quad, scene.tol.geo).value
        for s in series.steps
    ]


def rotation_number(scene: Scene, w1: TangentCircle, steps: int = 1) -> float:
    """Step mass over total mass for a nested scene.

    The first step's mass is used; when ``steps`` > 1 the masses of all
    requested steps must agree to 10x the quadrature tolerance, which is the
    constancy that makes the ratio well defined.
    """
    if not scene.is_nested():
        raise NotNested("rotation number requires the nested configuration")
    series = begin_series(scene, w1)
    for _ in range(steps - 1):
        series = next_step(series)
    masses = step_masses(series)
    if len(masses) > 1:
        spread = max(abs(m - masses[0]) for m in masses)
        if spread > 10.0 * scene.tol.quad * max(1.0, abs(masses[0])):
            raise NotNested(f"step masses are not constant (spread {spread:.3g})")
    return masses[0] / total_mass(scene.density(), scene.delta, scene.tol.quad)


@dataclass(frozen=True)
class SignedInvariantReport:
    signed_spread: float
    signed_spread_halved: float
    halving_ratio: float
    unsigned_spread: float
    values: tuple[float, ...]


def _perturbed_points(series: CircularSeries, eps: float) -> list[Point]:
    scene = series.scene
    x1 = series.steps[0].start
    x1_new = scene.delta.point_at(scene.delta.angle_of(x1) + eps / scene.delta.radius)
    cands = tangent_circles_through_point(
        scene.alpha0, scene.alpha1, x1_new, scene.index, scene.tol.geo
    )
    w1 = series.steps[0].omega.circle
    w1_new = min(
        cands,
        key=lambda s: s.circle.center.dist(w1.center) + abs(s.circle.radius - w1.radius),
    )
    perturbed = begin_series(scene, w1_new, start=x1_new)
    for _ in range(len(series.steps) - 1):
        perturbed = next_step(perturbed)
    return perturbed.points


def signed_invariant_check(
    scene: Scene,
    series: CircularSeries,
    eps_perturb: float = 1e-4,
) -> SignedInvariantReport:
    """Spread of the orientation-signed invariant along a perturbed series.

    Every chord point is displaced by perturbing the first circle; the
    products sign * density * displacement must agree across steps up to
    O(eps).  The same products without the orientation factor are reported
    as ``unsigned_spread``: outside the nested case the chord points can
    move in opposite directions, so that chain is not constant.  Requires
    the start circle to lie inside the outer base circle, which keeps the
    sign bookkeeping of consecutive touch chords coherent.
    """
    if not scene.alpha1.contains_circle(series.steps[0].omega.circle, max(scene.tol.geo, 1e-12)):
        raise AssumptionViolated("the start circle must lie inside the outer base circle")
    density = scene.density()

    def signed_values(eps: float) -> tuple[list[float], list[float]]:
        new_points = _perturbed_points(series, eps)
        signed_vals: list[float] = []
        unsigned_vals: list[float] = []
        for step, x_new in zip(series.steps, new_points):
            x = step.start
            dx = signed_arc_length(scene.delta, x, x_new)
            tau = orientation(x, step.omega.touch0, step.omega.touch1)
            r = density.rho(x)
            signed_vals.append(tau * r * dx)
            unsigned_vals.append(r * dx)
        return signed_vals, unsigned_vals

    def spread(vals: list[float]) -> float:
        ref = vals[0]
        return max(abs(v - ref) for v in vals) / abs(ref)

    s1, u1 = signed_values(eps_perturb)
    s2, _ = signed_values(0.5 * eps_perturb)
    sp1, sp2 = spread(s1), spread(s2)
    return SignedInvariantReport(
        signed_spread=sp1,
        signed_spread_halved=sp2,
        halving_ratio=sp2 / sp1 if sp1 else 0.0,
        unsigned_spread=spread(u1),
        values=tuple(s1),
    )


def _transform_scene(inv: Inversion, scene: Scene, w1: TangentCircle) -> tuple[Scene, TangentCircle]:
    imgs = []
    for c in (scene.alpha0, scene.alpha1, scene.delta, w1.circle):
        img = inv.apply_circle(c, scene.tol.geo)
        if not isinstance(img, Circle):
            raise NormalizationFailed("a scene circle passes through the inversion center")
        imgs.append(img)
    a0, a1, delta, w = imgs
    idx = classify_index(w, a0, a1, max(scene.tol.geo, 1e-7))
    new_scene = replace(scene, alpha0=a0, alpha1=a1, delta=delta, index=idx)
    new_w = TangentCircle(w, inv.apply(w1.touch0), inv.apply(w1.touch1), idx)
    return new_scene, new_w


def normalize_assumption1(
    scene: Scene, w1: TangentCircle
) -> tuple[Inversion | None, Scene, TangentCircle]:
    """Find an inversion after which the start circle lies inside the outer base.

    Identity (None) if already satisfied.  Candidate centers are drawn from a
    small grid in the complementary regions of the outer base circle and each
    one is verified post hoc by the containment test.
    """
    tol = scene.tol.geo
    if scene.alpha1.contains_circle(w1.circle, tol):
        return None, scene, w1
    crossings = circle_circle_intersection(w1.circle, scene.alpha1, tol)
    if len(crossings) == 2:
        raise NotTangentConfiguration("the start circle intersects the outer base circle")

    candidates: list[Point] = [scene.alpha1.center]
    for frac in (0.35, 0.65):
        for k in range(8):
            ang = (k + 0.31) * _TWO_PI / 8.0
            candidates.append(
                scene.alpha1.center
                + Point(math.cos(ang), math.sin(ang)) * (frac * scene.alpha1.radius)
            )
    for frac in (1.8, 3.2):
        for k in range(8):
            ang = (k + 0.17) * _TWO_PI / 8.0
            candidates.append(
                scene.alpha1.center
                + Point(math.cos(ang), math.sin(ang)) * (frac * scene.alpha1.radius)
            )
    for center in candidates:
        near_any = any(
            abs(c.power(center)) <= 10.0 * tol * c.radius
            for c in (scene.alpha0, scene.alpha1, scene.delta, w1.circle)
        )
        if near_any:
            continue
        inv = Inversion(center, 1.0)
        try:
            new_scene, new_w = _transform_scene(inv, scene, w1)
        except (NormalizationFailed, NotTangent):
            continue
        if new_scene.alpha1.contains_circle(new_w.circle, tol):
            return inv, new_scene, new_w
    raise NormalizationFailed("no inversion center produced the required containment")
