"""Quartic curves of circle type, their pencils of equivalent quadrics on a
carrier circle, and the two-way bridge between chord tangency and pairs of
circles.

A curve F = lam*(x^2+y^2)^2 + (x^2+y^2)*l(x) + Q(x) restricted to a circle
agrees, up to one constant, with every member of a pencil of quadrics; the
member picked out by tangency to a chord of a circular series is the conic
all chords of that series touch.  The inverse direction reconstructs a
circle pair from the conic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.optimize as opt

from .errors import (
    AmbiguousAp,
    GeometryError,
    LambdaZero,
    NoRealAp,
    NoRealPair,
    NotDoublyTangent,
    SeriesBlocked,
)
from .geometry import (
    Circle,
    Line,
    Point,
    Quadric,
    line_restriction,
    line_tangency_residual,
)
from .pencils import Pencil, classify_quadric
from .series import Scene, run_series, start_circle

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Cyclic:
    """Degree-four curve lam*(x^2+y^2)^2 + (x^2+y^2)*(lx*x + ly*y) + Q."""

    lam: float
    lx: float
    ly: float
    quad: Quadric

    def __call__(self, p: Point) -> float:
        s = p.norm2()
        return self.lam * s * s + s * (self.lx * p.x + self.ly * p.y) + self.quad(p)

    def gradient(self, p: Point) -> Point:
        s = p.norm2()
        lin = self.lx * p.x + self.ly * p.y
        gx = 4.0 * self.lam * s * p.x + 2.0 * p.x * lin + s * self.lx
        gy = 4.0 * self.lam * s * p.y + 2.0 * p.y * lin + s * self.ly
        return Point(gx, gy) + self.quad.gradient(p)

    @classmethod
    def from_pair(cls, a0: Circle, a1: Circle) -> "Cyclic":
        """The product of the two power functions, expanded."""
        l0, l1 = a0.linear_coeff, a1.linear_coeff
        b0, b1 = a0.const_coeff, a1.const_coeff
        quad = Quadric(
            a11=b0 + b1 + l0.x * l1.x,
            a12=0.5 * (l0.x * l1.y + l0.y * l1.x),
            a22=b0 + b1 + l0.y * l1.y,
            b1=b0 * l1.x + b1 * l0.x,
            b2=b0 * l1.y + b1 * l0.y,
            c=b0 * b1,
        )
        return cls(1.0, l0.x + l1.x, l0.y + l1.y, quad)

    @classmethod
    def from_quadric(cls, q: Quadric) -> "Cyclic":
        return cls(0.0, 0.0, 0.0, q)

    def normalized(self, tol: float = 1e-12) -> "Cyclic":
        """Rescale so the leading coefficient is 1, or validate the conic case."""
        if abs(self.lam) > tol:
            s = 1.0 / self.lam
            return Cyclic(1.0, self.lx * s, self.ly * s, self.quad.scaled(s))
        if abs(self.lx) > tol or abs(self.ly) > tol:
            raise LambdaZero("zero leading coefficient with a nonzero cubic part")
        return Cyclic(0.0, 0.0, 0.0, self.quad)


def equivalent_pencil(curve: Cyclic, delta: Circle, tol: float = 1e-12) -> Pencil:
    """Pencil of quadrics agreeing with the curve on the carrier circle.

    The member at parameter t is F - (p0 + t) f_delta where p0 is the unique
    monic quadratic making the difference a conic; t -> inf recovers the
    carrier itself.
    """
    curve = curve.normalized(tol)
    ld = delta.linear_coeff
    ad = delta.const_coeff
    f_delta = Quadric.from_circle(delta)
    if curve.lam == 0.0:
        gen_a = curve.quad
    else:
        lp = Point(curve.lx - ld.x, curve.ly - ld.y)
        q = curve.quad
        gen_a = Quadric(
            a11=q.a11 - ad - lp.x * ld.x,
            a12=q.a12 - 0.5 * (lp.x * ld.y + lp.y * ld.x),
            a22=q.a22 - ad - lp.y * ld.y,
            b1=q.b1 - ad * lp.x,
            b2=q.b2 - ad * lp.y,
            c=q.c,
        )
    gen_b = gen_a.plus(f_delta, -1.0)
    return Pencil(gen_a, gen_b)


@dataclass(frozen=True)
class EquivalenceWitness:
    """A concrete member with the measured proportionality constant on the carrier."""

    a_p: float
    lp: Point
    member: Quadric
    mu: float
    spread: float


def equivalence_witness(
    curve: Cyclic, delta: Circle, a_p: float, samples: int = 50
) -> EquivalenceWitness:
    """Sample F / q over the carrier and report the constant and its spread."""
    curve_n = curve.normalized()
    pencil = equivalent_pencil(curve_n, delta)
    member = pencil.combination(a_p)
    ld = delta.linear_coeff
    ratios = []
    for j in range(samples):
        p = delta.point_at((j + 0.29) * _TWO_PI / samples)
        qv = member(p)
        fv = curve_n(p)
        if abs(qv) < 1e-12:
            continue
        ratios.append(fv / qv)
    if len(ratios) < 3:
        raise GeometryError("carrier is too close to the curve for sampling")
    mu = sorted(ratios)[len(ratios) // 2]
    spread = max(abs(r - mu) for r in ratios) / max(abs(mu), 1e-300)
    lp = Point(curve_n.lx - ld.x, curve_n.ly - ld.y)
    return EquivalenceWitness(a_p, lp, member, mu, spread)


@dataclass(frozen=True)
class Prop1PrimeReport:
    samples_used: int
    ratio: float
    max_rel_deviation: float


def verify_prop1_prime(
    curve: Cyclic,
    w: Circle,
    t0: Point,
    t1: Point,
    samples: int = 64,
    tangency_tol: float = 1e-8,
) -> Prop1PrimeReport:
    """F restricted to a doubly tangent circle against squared chord distance.

    Requires the curve to vanish at both touch points with the curve normal
    aligned to the circle normal there.
    """
    scale = max(abs(v) for v in curve.quad.coeffs()) + abs(curve.lam) + 1.0
    for t in (t0, t1):
        if abs(curve(t)) > tangency_tol * scale:
            raise NotDoublyTangent(f"curve does not vanish at {t}")
        grad = curve.gradient(t)
        radial = t - w.center
        misalign = abs(grad.cross(radial)) / (grad.norm() * radial.norm() + 1e-300)
        if misalign > tangency_tol:
            raise NotDoublyTangent("curve normal is not aligned with the circle normal")
    chord = Line.through_points(t0, t1)
    skip = [w.angle_of(t0), w.angle_of(t1)]
    vals = []
    for k in range(samples):
        theta = (k + 0.5) * _TWO_PI / samples
        if any(abs((theta - s + math.pi) % _TWO_PI - math.pi) < 0.1 for s in skip):
            continue
        p = w.point_at(theta)
        h = chord.distance(p)
        if h <= 1e-9 * w.radius:
            continue
        vals.append(curve(p) / (h * h))
    if len(vals) < 3:
        raise GeometryError("not enough non-singular samples on the circle")
    mean = sum(vals) / len(vals)
    dev = max(abs(v - mean) for v in vals) / abs(mean)
    return Prop1PrimeReport(len(vals), mean, dev)


@dataclass(frozen=True)
class DerivedQuadric:
    quadric: Quadric
    a_p: float


def _tangency_roots(pencil: Pencil, chord: Line) -> list[float]:
    """Parameters where the pencil member is tangent to the chord.

    The restriction coefficients are affine in the parameter, so the
    discriminant is an exact quadratic; degenerate restrictions (constant
    along the chord) are filtered out.
    """
    a0, b0, c0 = line_restriction(pencil.combination(0.0), chord)
    a1, b1, c1 = line_restriction(pencil.combination(1.0), chord)
    da, db, dc = a1 - a0, b1 - b0, c1 - c0
    # disc(t) = (b0 + t db)^2 - 4 (a0 + t da)(c0 + t dc)
    c2 = db * db - 4.0 * da * dc
    c1_ = 2.0 * b0 * db - 4.0 * (a0 * dc + c0 * da)
    c0_ = b0 * b0 - 4.0 * a0 * c0
    scale = max(abs(c2), abs(c1_), abs(c0_), 1e-300)
    roots = [float(r.real) for r in np.roots([c2 / scale, c1_ / scale, c0_ / scale])
             if abs(r.imag) <= 1e-9 * max(1.0, abs(r.real))]
    good = []
    for t in roots:
        A = a0 + t * da
        B = b0 + t * db
        if abs(A) <= 1e-11 * (abs(B) + abs(A) + 1.0):
            continue  # restriction degenerates: no genuine double root
        good.append(t)
    return sorted(good)


def derive_poncelet_quadric(
    a0: Circle,
    a1: Circle,
    delta: Circle,
    chord: Line,
    second_chord: Line | None = None,
) -> DerivedQuadric:
    """The equivalent-pencil member tangent to a series chord.

    The tangency condition is an exact quadratic in the pencil parameter.
    With two real roots a second chord discriminates; without one the
    ambiguity is raised with both candidates attached.
    """
    curve = Cyclic.from_pair(a0, a1)
    pencil = equivalent_pencil(curve, delta)
    roots = _tangency_roots(pencil, chord)
    if not roots:
        raise NoRealAp("no real pencil parameter makes the member touch the chord")
    candidates = [DerivedQuadric(pencil.combination(t), t) for t in roots]
    if len(candidates) == 1:
        return candidates[0]
    if second_chord is None:
        raise AmbiguousAp("two pencil parameters touch the chord", candidates)
    def second_residual(cand: DerivedQuadric) -> float:
        try:
            return abs(line_tangency_residual(cand.quadric, second_chord))
        except GeometryError:
            return math.inf
    return min(candidates, key=second_residual)


def chord_line(start: Point, end: Point) -> Line:
    return Line.through_points(start, end)


def _harmonics(q: Quadric, radius: float) -> tuple[complex, np.ndarray, float]:
    """Second harmonic (complex), first harmonic (vector), and mean of q on the
    origin-centered circle of the given radius."""
    k = complex(q.a11 - q.a22, 2.0 * q.a12)
    g = np.array([q.b1, q.b2])
    c0 = 0.5 * (q.a11 + q.a22) * radius * radius + q.c
    return k, g, c0


def _coeff_distance(a: Quadric, b: Quadric) -> float:
    an, bn = a.normalized(), b.normalized()
    return max(abs(u - v) for u, v in zip(an.coeffs(), bn.coeffs()))


class _PairSearch:
    """Deterministic search for a circle pair whose chord envelope is a target conic.

    Works in the frame where the carrier is centered at the origin.  Matching
    the restriction of the product of powers to the carrier against the
    target (Fourier harmonics) leaves free parameters; the remaining scalar
    condition, that the pencil member tangent to an actual series chord is
    the target itself, is root-found along deterministic parameter slices.
    """

    _START_ANGLES = (0.37, 1.13, 2.31, 3.93, 5.21, 0.9)
    _SIGMA_GRID = tuple(
        sign * x for sign in (1.0, -1.0) for x in np.geomspace(1e-2, 1e3, 26)
    )

    def __init__(self, gamma: Quadric, delta: Circle, round_trip_tol: float, verify_steps: int):
        self.gamma = gamma.translated(delta.center).normalized()
        self.radius = delta.radius
        self.delta = Circle(Point(0.0, 0.0), delta.radius)
        self.k_hat, self.g_vec, self.c0 = _harmonics(self.gamma, delta.radius)
        self.f_delta = np.array(Quadric.from_circle(self.delta).coeffs())
        self.g_coef = np.array(self.gamma.coeffs())
        self.tol = round_trip_tol
        self.verify_steps = verify_steps

    # -- candidate construction ------------------------------------------

    def _circles_from(self, a0: float, b0: np.ndarray, a1: float, b1: np.ndarray):
        r = self.radius
        r0sq = 0.25 * float(b0 @ b0) - (a0 - r * r)
        r1sq = 0.25 * float(b1 @ b1) - (a1 - r * r)
        if r0sq <= 1e-10 or r1sq <= 1e-10:
            return None
        return (
            Circle(Point(float(-0.5 * b0[0]), float(-0.5 * b0[1])), math.sqrt(r0sq)),
            Circle(Point(float(-0.5 * b1[0]), float(-0.5 * b1[1])), math.sqrt(r1sq)),
        )

    def _pair_general(self, phi: float, sigma: float, s: float):
        u = np.array([math.cos(phi), math.sin(phi)])
        wz = self.k_hat * complex(math.cos(phi), -math.sin(phi))
        w = np.array([wz.real, wz.imag])
        mat = np.column_stack([w, u])
        if abs(np.linalg.det(mat)) < 1e-13:
            return None
        p, q = np.linalg.solve(mat, self.g_vec)
        return self._circles_from(s * p, s * u, sigma * q / s, (sigma / s) * w)

    def _pair_circle_branch(self, sigma: float, a1: float):
        if abs(a1) < 1e-12:
            return None
        b0 = sigma * self.g_vec / a1
        a0 = sigma * self.c0 / a1
        return self._circles_from(a0, b0, a1, np.zeros(2))

    def _psi(self, phi: float) -> float | None:
        u = np.array([math.cos(phi), math.sin(phi)])
        wz = self.k_hat * complex(math.cos(phi), -math.sin(phi))
        w = np.array([wz.real, wz.imag])
        mat = np.column_stack([w, u])
        if abs(np.linalg.det(mat)) < 1e-13:
            return None
        p, q = np.linalg.solve(mat, self.g_vec)
        r = self.radius
        second = (self.k_hat.conjugate() * complex(math.cos(2 * phi), math.sin(2 * phi))).real
        return p * q + 0.5 * second * r * r - self.c0

    def _phi_roots(self) -> list[float]:
        n = 720
        phis = [j * _TWO_PI / n for j in range(n + 1)]
        vals = [self._psi(t) for t in phis]
        roots = []
        for (t0, v0), (t1, v1) in zip(zip(phis, vals), zip(phis[1:], vals[1:])):
            if v0 is None or v1 is None:
                continue
            if v0 == 0.0:
                roots.append(t0)
            elif v0 * v1 < 0.0:
                roots.append(opt.brentq(lambda t: self._psi(t), t0, t1, xtol=1e-14))
        return roots

    # -- envelope condition ------------------------------------------------

    def _first_chord(self, a0: Circle, a1: Circle, index: int) -> Line | None:
        from .series import begin_series

        scene = Scene(a0, a1, self.delta, index)
        for th in self._START_ANGLES:
            try:
                w1 = start_circle(scene, self.delta.point_at(th))
                ser = begin_series(scene, w1)
                return chord_line(ser.steps[0].start, ser.steps[0].end)
            except (GeometryError, SeriesBlocked):
                continue
        return None

    def _a_p_of_target(self, a0: Circle, a1: Circle) -> tuple[float, float]:
        pen = equivalent_pencil(Cyclic.from_pair(a0, a1), self.delta)
        ga = np.array(pen.gen_a.coeffs())
        mat = np.column_stack([self.f_delta, self.g_coef])
        sol, *_ = np.linalg.lstsq(mat, ga, rcond=None)
        resid = float(np.linalg.norm(mat @ sol - ga))
        return float(sol[0]), resid

    def _envelope_gaps(self, pair, index: int):
        if pair is None:
            return None
        a0, a1 = pair
        a_p_target, resid = self._a_p_of_target(a0, a1)
        if resid > 1e-7:
            return None
        chord = self._first_chord(a0, a1, index)
        if chord is None:
            return None
        pen = equivalent_pencil(Cyclic.from_pair(a0, a1), self.delta)
        roots = _tangency_roots(pen, chord)
        if not roots:
            return None
        gaps: list[float | None] = [a_p_target - r for r in sorted(roots)]
        while len(gaps) < 2:
            gaps.append(None)
        return gaps[:2]

    def _scan_sigma(self, make_pair, index: int):
        """Yield sigma values where an envelope-gap branch crosses zero."""
        prev: dict[int, tuple[float, float | None]] = {}
        for sigma in self._SIGMA_GRID:
            gaps = self._envelope_gaps(make_pair(sigma), index)
            for branch in (0, 1):
                val = gaps[branch] if gaps else None
                if (
                    val is not None
                    and branch in prev
                    and prev[branch][1] is not None
                    and prev[branch][1] * val < 0.0
                ):
                    lo, hi = prev[branch][0], sigma

                    def h(x: float) -> float:
                        g = self._envelope_gaps(make_pair(x), index)
                        if g is None or g[branch] is None:
                            return math.nan
                        return g[branch]

                    try:
                        yield opt.brentq(h, lo, hi, xtol=1e-13, rtol=8.9e-16)
                    except ValueError:
                        pass
                prev[branch] = (sigma, val)

    # -- verification --------------------------------------------------------

    def _verified(self, pair, index: int) -> tuple[Circle, Circle] | None:
        if pair is None:
            return None
        a0, a1 = pair
        from .series import begin_series

        scene = Scene(a0, a1, self.delta, index)
        for th in self._START_ANGLES:
            try:
                w1 = start_circle(scene, self.delta.point_at(th))
                ser, _ = run_series(scene, w1, self.verify_steps, compute_masses=False)
            except (GeometryError, SeriesBlocked):
                continue
            if len(ser.steps) < 3:
                continue
            chords = [chord_line(s.start, s.end) for s in ser.steps]
            try:
                worst = max(abs(line_tangency_residual(self.gamma, c)) for c in chords)
            except GeometryError:
                continue
            if worst > self.tol:
                return None
            try:
                der = derive_poncelet_quadric(a0, a1, self.delta, chords[0], chords[1])
            except (NoRealAp, AmbiguousAp):
                return None
            if _coeff_distance(der.quadric, self.gamma) > self.tol:
                return None
            return a0, a1
        return None

    # -- branches ---------------------------------------------------------

    def _concentric_candidates(self):
        target = self.gamma.as_circle()
        if target is None or target.center.norm() > 1e-10:
            return
        s = target.radius
        if s >= self.radius - 1e-12:
            return
        for frac in (0.5, 0.7, 0.3, 0.9, 0.15):
            r0 = frac * s
            denom = s - r0
            r1sq_num = self.radius * self.radius - s * r0
            r1 = r1sq_num / denom
            if r1 <= self.radius:
                continue
            yield (Circle(Point(0.0, 0.0), r0), Circle(Point(0.0, 0.0), r1)), 1

    def _circle_branch_candidates(self):
        r = self.radius
        for a1_frac in (0.5, -0.5, 0.8, -1.5, 0.2, -4.0, 0.95):
            a1 = a1_frac * r * r
            if a1 >= r * r:
                continue
            for index in (1, 0):
                for sigma in self._scan_sigma(lambda x: self._pair_circle_branch(x, a1), index):
                    yield self._pair_circle_branch(sigma, a1), index

    def _general_candidates(self):
        scale_k = abs(self.k_hat)
        for phi in self._phi_roots():
            for cmul in (1.0, 0.4, 2.5, 0.15, 6.0):
                for index in (1, 0):
                    def make(sigma: float):
                        s = cmul * math.sqrt(abs(sigma) * scale_k)
                        if s <= 0.0:
                            return None
                        return self._pair_general(phi, sigma, s)

                    for sigma in self._scan_sigma(make, index):
                        yield make(sigma), index

    def run(self) -> tuple[Circle, Circle, int]:
        scale = max(abs(v) for v in self.gamma.coeffs())
        circle_like = abs(self.k_hat) <= 1e-10 * scale
        if circle_like:
            branches = [self._concentric_candidates(), self._circle_branch_candidates()]
        else:
            branches = [self._general_candidates()]
        for branch in branches:
            for pair, index in branch:
                got = self._verified(pair, index)
                if got is not None:
                    return got[0], got[1], index
        raise NoRealPair("no real circle pair reproduces the conic as a chord envelope")


@dataclass(frozen=True)
class CirclePair:
    """A reconstructed base pair together with the tangency index whose
    series chords touch the target conic."""

    alpha0: Circle
    alpha1: Circle
    index: int


def quadric_to_circle_pair(
    gamma: Quadric,
    delta: Circle,
    round_trip_tol: float = 1e-8,
    verify_steps: int = 8,
) -> CirclePair:
    """Circles whose series chords on the carrier are tangent to the conic.

    The construction matches the restriction of the product of the two power
    functions to the carrier against the conic and then pins the remaining
    freedom with the chord-tangency condition; every returned pair has been
    verified by rebuilding the conic from its own chords.  The chord
    envelope belongs to the reported tangency index.  Raises NoRealPair when
    the deterministic search exhausts its slices.
    """
    search = _PairSearch(gamma, delta, round_trip_tol, verify_steps)
    a0, a1, index = search.run()
    shift = delta.center
    return CirclePair(
        Circle(a0.center + shift, a0.radius),
        Circle(a1.center + shift, a1.radius),
        index,
    )


def double_line_member(curve: Cyclic, w: Circle, t0: Point, t1: Point) -> tuple[Quadric, float]:
    """The member of the circle-equivalent pencil proportional to the chord squared.

    Returns the member and its normalized coefficient distance to the
    squared chord line, which is zero when the pencil contains the double
    line through the touch points.
    """
    pencil = equivalent_pencil(curve, w)
    chord = Line.through_points(t0, t1)
    v = chord.normal.perp()
    ga = pencil.gen_a
    # quadratic part of the member at t is (gen_a quad) - t * I; the double
    # line has zero quadratic action along the chord direction
    a_p = ga.a11 * v.x * v.x + 2.0 * ga.a12 * v.x * v.y + ga.a22 * v.y * v.y
    member = pencil.combination(a_p)
    target = Quadric.double_line(chord)
    mn, tn = member.normalized(), target.normalized()
    dist = max(abs(u - w_) for u, w_ in zip(mn.coeffs(), tn.coeffs()))
    return member, dist
