"""Pencils of circles and quadrics: members, proportional measures on a
common carrier, generalized chains drawing each step from a different pair,
and the fixed-circle diagonal corollaries."""

from __future__ import annotations

import math
from dataclasses import dataclass

import scipy.optimize as opt

from .errors import (
    DegeneratePair,
    GeometryError,
    ImaginaryMember,
    NoTangentMember,
    NotNested,
    NoRealSolution,
    PointOnBaseCircle,
    SeriesBlocked,
)
from .geometry import GEO_TOL, Circle, Line, Point, Quadric, circle_circle_intersection
from .measure import CCW, PairDensity
from .series import (
    CircularSeries,
    ClosureReport,
    Scene,
    SeriesStep,
    _arc_midpoint_inside,
    _closure_residual,
)
from .tangency import (
    TangentCircle,
    circles_through_points_tangent_to,
    tangency_kind,
    tangent_circles_through_point,
)

_TWO_PI = 2.0 * math.pi

CIRCLE = "circle"
POINT_CIRCLE = "point"
LINE = "line"
CONIC = "conic"
IMAGINARY = "imaginary"


@dataclass(frozen=True)
class Pencil:
    """One-parameter family (1-t) g_a + t g_b of quadrics.

    The generators sit at t = 0 and t = 1; t = inf gives the difference
    locus, which for two circle generators is the radical axis.
    """

    gen_a: Quadric
    gen_b: Quadric

    @classmethod
    def from_circles(cls, a: Circle, b: Circle) -> "Pencil":
        return cls(Quadric.from_circle(a), Quadric.from_circle(b))

    def combination(self, t: float) -> Quadric:
        if math.isinf(t):
            return self.gen_b.plus(self.gen_a, -1.0)
        ca, cb = self.gen_a.coeffs(), self.gen_b.coeffs()
        return Quadric(*((1.0 - t) * u + t * v for u, v in zip(ca, cb)))


def classify_quadric(q: Quadric, tol: float = 1e-12) -> str:
    """Circle-pencil classification of a quadric."""
    scale = max(abs(v) for v in q.coeffs())
    circle_like = (
        abs(q.a11 - q.a22) <= tol * scale
        and abs(q.a12) <= tol * scale
        and abs(q.a11) > tol * scale
    )
    if not circle_like:
        if abs(q.a11) <= tol * scale and abs(q.a22) <= tol * scale and abs(q.a12) <= tol * scale:
            return LINE
        return CONIC
    center = Point(-q.b1 / (2.0 * q.a11), -q.b2 / (2.0 * q.a11))
    r2 = center.norm2() - q.c / q.a11
    if r2 > tol * max(1.0, center.norm2()):
        return CIRCLE
    if r2 < -tol * max(1.0, center.norm2()):
        return IMAGINARY
    return POINT_CIRCLE


def pencil_member(p: Pencil, t: float, tol: float = 1e-12) -> Circle | Line | Quadric:
    """The member at parameter t, as a Circle or Line when it is one.

    Raises ImaginaryMember for members with negative squared radius; point
    circles and genuine conics come back as raw quadrics.
    """
    q = p.combination(t)
    kind = classify_quadric(q, tol)
    if kind == CIRCLE:
        center = Point(-q.b1 / (2.0 * q.a11), -q.b2 / (2.0 * q.a11))
        return Circle(center, math.sqrt(center.norm2() - q.c / q.a11))
    if kind == LINE:
        n = Point(q.b1, q.b2)
        if n.norm() == 0.0:
            raise GeometryError("pencil member degenerates to a constant")
        return Line(n.unit(), -q.c / n.norm())
    if kind == IMAGINARY:
        raise ImaginaryMember(f"member at t={t} has negative squared radius")
    return q


@dataclass(frozen=True)
class PairSequence:
    """Members of two pencils through a common carrier, one pair per step."""

    pencil0: Pencil
    pencil1: Pencil
    t0s: tuple[float, ...]
    t1s: tuple[float, ...]

    @classmethod
    def from_base(
        cls, delta: Circle, a0: Circle, a1: Circle, t0s, t1s
    ) -> "PairSequence":
        return cls(
            Pencil.from_circles(delta, a0),
            Pencil.from_circles(delta, a1),
            tuple(t0s),
            tuple(t1s),
        )

    def pair(self, k: int) -> tuple[Circle, Circle]:
        t0, t1 = self.t0s[k], self.t1s[k]
        if abs(t0) < 1e-12 or abs(t1) < 1e-12:
            raise DegeneratePair("a member coincides with the carrier circle")
        m0 = pencil_member(self.pencil0, t0)
        m1 = pencil_member(self.pencil1, t1)
        if not isinstance(m0, Circle) or not isinstance(m1, Circle):
            raise DegeneratePair(f"pair {k} is not a pair of real circles")
        return m0, m1

    def __len__(self) -> int:
        return len(self.t0s)


@dataclass(frozen=True)
class Prop3Report:
    ratio_spread: float
    identity_residual: float
    constants: tuple[float, ...]


def verify_prop3(pairs: PairSequence, delta: Circle, samples: int = 100) -> Prop3Report:
    """All pairs generate proportional densities on the carrier.

    Checks both the sampled ratio of densities against the first pair and
    the product identity f0_k f1_k = t0_k t1_k f0_1 f1_1 on the carrier.
    """
    base0, base1 = pairs.pair(0)
    d1 = PairDensity.of_pair(base0, base1)
    pts = [delta.point_at((j + 0.37) * _TWO_PI / samples) for j in range(samples)]
    spread = 0.0
    identity_resid = 0.0
    constants = []
    for k in range(len(pairs)):
        a0k, a1k = pairs.pair(k)
        dk = PairDensity.of_pair(a0k, a1k)
        scale_t = (pairs.t0s[k] / pairs.t0s[0]) * (pairs.t1s[k] / pairs.t1s[0])
        ratios = []
        for p in pts:
            r1 = d1.rho(p)
            rk = dk.rho(p)
            if not (math.isfinite(r1) and math.isfinite(rk)) or r1 == 0.0:
                continue
            ratios.append(rk / r1)
            lhs = a0k.power(p) * a1k.power(p)
            rhs = scale_t * base0.power(p) * base1.power(p)
            identity_resid = max(identity_resid, abs(lhs - rhs) / max(1.0, abs(rhs)))
        mean = sum(ratios) / len(ratios)
        spread = max(spread, max(abs(v - mean) for v in ratios) / abs(mean))
        constants.append(mean)
    return Prop3Report(spread, identity_resid, tuple(constants))


def _forward_candidate(
    delta: Circle,
    cands: list[TangentCircle],
    at: Point,
    direction: str,
    tol: float,
) -> tuple[TangentCircle, Point]:
    """The tangent circle whose chord arc continues in the running direction."""
    matches = []
    for cand in cands:
        pts = circle_circle_intersection(cand.circle, delta, tol)
        if len(pts) != 2:
            continue
        other = max(pts, key=lambda p: p.dist(at))
        if min(p.dist(at) for p in pts) > 1e4 * tol:
            continue
        if _arc_midpoint_inside(delta, cand.circle, at, other, direction):
            matches.append((cand, other))
    if len(matches) != 1:
        raise SeriesBlocked(
            f"expected one forward continuation, found {len(matches)}"
        )
    return matches[0]


def run_generalized_series(
    pairs: PairSequence,
    delta: Circle,
    start: Point,
    order: tuple[int, ...] | None = None,
    index: int = 1,
    direction: str = CCW,
    max_cycles: int = 4,
    close_tol: float = 1e-8,
    tol: float = GEO_TOL,
) -> ClosureReport:
    """Chain where step k touches the k-th pair of the (permuted) sequence.

    The pair list is used cyclically; closure is tested whenever a whole
    cycle completes.  The verdict must not depend on the permutation or on
    the start point, which is what the tests enumerate.
    """
    n = len(pairs)
    order = tuple(order) if order is not None else tuple(range(n))
    if sorted(order) != list(range(n)):
        raise GeometryError("order must be a permutation of the pair indices")
    seq = [pairs.pair(k) for k in order]
    for a0k, a1k in seq:
        inner = delta.center.dist(a0k.center) + a0k.radius < delta.radius - tol
        outer = a1k.center.dist(delta.center) + delta.radius < a1k.radius - tol
        if not (inner and outer):
            raise NotNested("every pair must be nested around the carrier")

    def circle_through(at: Point, k: int, prev: Circle | None) -> tuple[TangentCircle, Point]:
        a0k, a1k = seq[k % n]
        try:
            cands = tangent_circles_through_point(a0k, a1k, at, index, tol)
        except (NoRealSolution, PointOnBaseCircle) as exc:
            raise SeriesBlocked(f"tangency solve failed: {exc}") from exc
        return _forward_candidate(delta, cands, at, direction, tol)

    w1, lead = circle_through(start, 0, None)
    first = SeriesStep(w1, start, lead, direction)
    steps = [first]
    at = lead
    closed = False
    steps_to_close = None
    residual = math.inf
    for step_idx in range(1, max_cycles * n + 1):
        w, lead = circle_through(at, step_idx, steps[-1].omega.circle)
        new = SeriesStep(w, at, lead, direction)
        if step_idx % n == 0:
            res = _closure_residual(new, first)
            if res <= close_tol:
                closed = True
                steps_to_close = step_idx
                residual = res
                break
        steps.append(new)
        at = lead
    return ClosureReport(
        closed=closed,
        n=steps_to_close,
        winding=None,
        residual=residual,
        stop_reason="closed" if closed else "max_cycles",
    )


def tangent_member_parameters(
    p: Pencil,
    target: Circle,
    t_range: tuple[float, float] = (-40.0, 40.0),
    scan: int = 2400,
    tol: float = 1e-12,
) -> list[float]:
    """Parameters t where the pencil member is a real circle tangent to target.

    Both interior and exterior tangency branches are scanned for sign
    changes and bisected to ``tol`` in t.
    """

    def member_circle(t: float) -> Circle | None:
        try:
            m = pencil_member(p, t)
        except (ImaginaryMember, GeometryError):
            return None
        return m if isinstance(m, Circle) else None

    def gap(t: float, branch: str) -> float | None:
        m = member_circle(t)
        if m is None:
            return None
        d = m.center.dist(target.center)
        if branch == "ext":
            return d - (m.radius + target.radius)
        return d - abs(m.radius - target.radius)

    lo, hi = t_range
    ts = [lo + (hi - lo) * j / scan for j in range(scan + 1)]
    roots: list[float] = []
    for branch in ("ext", "int"):
        vals = [gap(t, branch) for t in ts]
        for (t0, v0), (t1, v1) in zip(zip(ts, vals), zip(ts[1:], vals[1:])):
            if v0 is None or v1 is None:
                continue
            if v0 == 0.0:
                roots.append(t0)
            elif v0 * v1 < 0.0:
                f = lambda t: gap(t, branch)
                roots.append(opt.brentq(f, t0, t1, xtol=tol))
    out: list[float] = []
    for r in sorted(roots):
        if not out or abs(r - out[-1]) > 1e-9:
            out.append(r)
    return out


@dataclass(frozen=True)
class DiagonalCluster:
    parameter: float
    spread: float
    member_kind: str


@dataclass(frozen=True)
class DiagonalReport:
    parameters: tuple[float, ...]
    spread: float
    member_kind: str
    clusters: tuple[DiagonalCluster, ...]


def diagonal_fixed_circle(
    series: CircularSeries,
    r: int,
    touch_kind: str | None = None,
    spread_tol: float = 1e-8,
) -> tuple[Circle | Line | Quadric, DiagonalReport]:
    """Fixed pencil member touched by all r-th order diagonal circles.

    For every k, the circles through chord points k and k+r tangent to the
    inner base circle are fitted against members of the pencil spanned by
    the carrier and the outer base.  A fitted parameter shared by every k
    (spread at most ``spread_tol``) identifies a fixed member; the tightest
    cluster is returned and all consistent clusters are reported.  Passing
    ``touch_kind`` restricts the diagonals to one tangency kind.
    """
    scene = series.scene
    if not scene.is_nested():
        raise NotNested("diagonal corollaries require the nested configuration")
    if r < 1:
        raise GeometryError("diagonal order must be at least 1")
    pts = series.points
    if len(pts) < r + 2:
        raise GeometryError("series too short for this diagonal order")
    pencil = Pencil.from_circles(scene.delta, scene.alpha1)

    per_k_params: list[list[float]] = []
    for k in range(len(pts) - r):
        sols = [
            c
            for c, _, kind in circles_through_points_tangent_to(
                pts[k], pts[k + r], scene.alpha0, scene.tol.geo
            )
            if touch_kind is None or kind == touch_kind
        ]
        if not sols:
            raise NoTangentMember(f"no diagonal circle of the requested kind at k={k}")
        params: list[float] = []
        for c in sols:
            params.extend(tangent_member_parameters(pencil, c))
        if not params:
            raise NoTangentMember(f"no tangent pencil member for diagonal k={k}")
        per_k_params.append(params)

    clusters: list[DiagonalCluster] = []
    best: tuple[list[float], float] | None = None
    for seed in sorted(per_k_params[0]):
        chosen = [seed]
        for params in per_k_params[1:]:
            cand = min(params, key=lambda t: abs(t - seed))
            if abs(cand - seed) > 1e-6:
                break
            chosen.append(cand)
        else:
            spread = max(chosen) - min(chosen)
            if spread <= spread_tol:
                t_mean = sum(chosen) / len(chosen)
                kind = classify_quadric(pencil.combination(t_mean))
                clusters.append(DiagonalCluster(t_mean, spread, kind))
                if best is None or spread < best[1]:
                    best = (chosen, spread)
    if best is None:
        raise NoTangentMember("no pencil parameter is shared by all diagonals")
    chosen, spread = best
    t_mean = sum(chosen) / len(chosen)
    member = pencil_member(pencil, t_mean)
    kind = classify_quadric(pencil.combination(t_mean))
    return member, DiagonalReport(tuple(chosen), spread, kind, tuple(clusters))
