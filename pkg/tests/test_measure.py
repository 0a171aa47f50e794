import math
import random

import pytest

from porism import (
    Circle,
    PairDensity,
    Point,
    ZigzagConfig,
    arc_mass,
    black_howland,
    jacobi_bertrand_limit_check,
    rho,
    tangent_circles_through_point,
    total_mass,
    verify_invariance,
    verify_prop1,
)
from porism.errors import DegenerateTriangle, PointNotOnCircle, QuadratureFailure
from porism.measure import CCW, CW, black_howland_cross, signed_arc_length, singular_angles
from conftest import make_nested_scene


@pytest.fixture
def density(concentric_pair):
    return PairDensity.of_pair(*concentric_pair)


class TestRho:
    def test_between_the_circles(self, density):
        # f0 = 3, f1 = -5 at (2, 0)
        assert rho(density, Point(2, 0)) == pytest.approx(1 / math.sqrt(15), rel=1e-15)

    def test_infinite_on_source(self, density):
        assert rho(density, Point(1, 0)) == math.inf

    def test_other_radius(self, density):
        # f0 = 2, f1 = -6
        assert rho(density, Point(math.sqrt(3), 0)) == pytest.approx(1 / math.sqrt(12), rel=1e-15)


class TestArcMass:
    def test_quarter_arc_constant_density(self, density):
        delta = Circle(Point(0, 0), 2.0)
        m = arc_mass(density, delta, Point(2, 0), Point(0, 2), CCW)
        assert m.value == pytest.approx(math.pi / math.sqrt(15), abs=1e-12)

    def test_full_circle(self, density):
        delta = Circle(Point(0, 0), math.sqrt(3))
        assert total_mass(density, delta) == pytest.approx(math.pi, abs=1e-12)

    def test_empty_arc(self, density):
        delta = Circle(Point(0, 0), 2.0)
        assert arc_mass(density, delta, Point(2, 0), Point(2, 0), CCW).value == 0.0

    def test_point_not_on_circle(self, density):
        delta = Circle(Point(0, 0), 2.0)
        with pytest.raises(PointNotOnCircle):
            arc_mass(density, delta, Point(1, 0), Point(0, 2), CCW)

    def test_additivity_across_singularities(self, density):
        # carrier crossing the inner source circle: integrable blowups inside
        delta = Circle(Point(0.5, 0), 1.0)
        a, b, c = delta.point_at(0.3), delta.point_at(1.5), delta.point_at(2.6)
        m_ab = arc_mass(density, delta, a, b, CCW).value
        m_bc = arc_mass(density, delta, b, c, CCW).value
        m_ac = arc_mass(density, delta, a, c, CCW).value
        assert m_ab + m_bc == pytest.approx(m_ac, abs=5e-10)

    def test_orientation_invariance_of_total(self, density):
        delta = Circle(Point(0.5, 0), 1.0)
        a, c = delta.point_at(0.0), delta.point_at(math.pi)
        ccw = (
            arc_mass(density, delta, a, c, CCW).value
            + arc_mass(density, delta, c, a, CCW).value
        )
        cw = (
            arc_mass(density, delta, a, c, CW).value
            + arc_mass(density, delta, c, a, CW).value
        )
        assert ccw == pytest.approx(cw, abs=5e-10)

    def test_quadrature_tolerance_refinement(self, density):
        delta = Circle(Point(0.5, 0), 1.0)
        a, b = delta.point_at(0.3), delta.point_at(2.6)
        coarse = arc_mass(density, delta, a, b, CCW, tol=1e-8)
        fine = arc_mass(density, delta, a, b, CCW, tol=1e-12)
        assert abs(coarse.value - fine.value) <= max(coarse.error, 1e-8)

    def test_singular_on_whole_carrier_fails(self, density):
        with pytest.raises(QuadratureFailure):
            singular_angles(density, Circle(Point(0, 0), 1.0))

    def test_signed_arc_length(self):
        delta = Circle(Point(0, 0), 2.0)
        d = signed_arc_length(delta, delta.point_at(0.1), delta.point_at(0.15))
        assert d == pytest.approx(0.05 * 2.0, abs=1e-12)
        assert signed_arc_length(delta, delta.point_at(0.15), delta.point_at(0.1)) < 0


class TestZigzagLaw:
    def test_matches_doubled_density(self, concentric_pair, density):
        z = ZigzagConfig.from_pair(*concentric_pair)
        delta = Circle(Point(0, 0), 2.0)
        p = delta.point_at(0.7)
        assert black_howland(z, p) == pytest.approx(2 * rho(density, p), rel=1e-13)

    def test_derived_fields(self, concentric_pair):
        z = ZigzagConfig.from_pair(*concentric_pair)
        assert z.mid_circle.radius == 2.0
        assert z.jump == 1.0

    def test_specific_value(self, concentric_pair):
        z = ZigzagConfig.from_pair(*concentric_pair)
        assert black_howland(z, Point(2, 0)) == pytest.approx(2 / math.sqrt(15), rel=1e-14)

    def test_boundary_infinite(self, concentric_pair):
        z = ZigzagConfig.from_pair(*concentric_pair)
        assert black_howland(z, Point(1, 0)) == math.inf

    def test_outside_annulus_raises(self, concentric_pair):
        z = ZigzagConfig.from_pair(*concentric_pair)
        with pytest.raises(DegenerateTriangle):
            black_howland(z, Point(5, 0))

    def test_cross_product_form_agrees(self, concentric_pair):
        z = ZigzagConfig.from_pair(*concentric_pair)
        delta = Circle(Point(0, 0), 1.8)
        for k in range(24):
            p = delta.point_at(k * math.pi / 12 + 0.01)
            assert black_howland_cross(z, p) == pytest.approx(black_howland(z, p), rel=1e-10)


class TestProp1:
    def test_specific_product(self, concentric_pair, density):
        # at (2, 1): f0 = 4, f1 = -4, distance to the x-axis chord is 1
        a0, a1 = concentric_pair
        w = tangent_circles_through_point(a0, a1, Point(2, 1), 1)
        # pick the circle through (2, 1); just evaluate rho * h directly
        p = Point(2, 1)
        from porism.geometry import Line

        chord = Line.through_points(Point(1, 0), Point(3, 0))
        assert rho(density, p) * chord.distance(p) == pytest.approx(0.25, rel=1e-13)

    def test_constant_along_tangent_circle(self, concentric_pair, density):
        a0, a1 = concentric_pair
        w = tangent_circles_through_point(a0, a1, Point(2, 0), 1)[0]
        rep = verify_prop1(w, density, samples=64)
        assert rep.max_rel_deviation <= 1e-9
        assert rep.mean_product == pytest.approx(0.25, rel=1e-12)

    def test_random_scenes(self):
        rng = random.Random(17)
        worst = 0.0
        for _ in range(100):
            scene = make_nested_scene(rng)
            d = PairDensity.of_pair(scene.alpha0, scene.alpha1)
            p = scene.delta.point_at(rng.uniform(0, 2 * math.pi))
            for w in tangent_circles_through_point(scene.alpha0, scene.alpha1, p, 1):
                worst = max(worst, verify_prop1(w, d, samples=32).max_rel_deviation)
        assert worst <= 1e-9


class TestInvariance:
    def test_concentric_residual_small(self, concentric_pair, density):
        a0, a1 = concentric_pair
        delta = Circle(Point(0, 0), math.sqrt(3))
        w = tangent_circles_through_point(a0, a1, delta.point_at(0.2), 1)[0]
        rep = verify_invariance(density, delta, w, 1e-4)
        assert not rep.skipped
        assert rep.residual <= 1e-3

    def test_halving_on_asymmetric_scene(self):
        rng = random.Random(23)
        scene = make_nested_scene(rng)
        d = PairDensity.of_pair(scene.alpha0, scene.alpha1)
        w = tangent_circles_through_point(
            scene.alpha0, scene.alpha1, scene.delta.point_at(0.9), 1
        )[0]
        rep = verify_invariance(d, scene.delta, w, 1e-4)
        assert rep.residual <= 1e-3
        assert 0.4 <= rep.halving_ratio <= 0.6

    def test_skipped_when_chord_degenerates(self, concentric_pair, density):
        a0, a1 = concentric_pair
        # carrier tangent to the chain circle: single intersection point
        delta = Circle(Point(0, 0), 1.0)
        w = tangent_circles_through_point(a0, a1, Point(2, 0), 1)[0]
        rep = verify_invariance(density, delta, w, 1e-4)
        assert rep.skipped

    def test_coaxial_reciprocal_power_invariance(self):
        # carrier from the pencil of the pair: the reciprocal-power density
        # is invariant under the same perturbation
        a0 = Circle(Point(0.4, 0), 0.8)
        a1 = Circle(Point(-0.3, 0), 3.0)
        from porism.pencils import Pencil, pencil_member

        pen = Pencil.from_circles(a0, a1)
        delta = pencil_member(pen, 0.55)
        assert isinstance(delta, Circle)
        d = PairDensity.reciprocal_power(a0)
        w = tangent_circles_through_point(a0, a1, delta.point_at(0.8), 1)[0]
        rep = verify_invariance(d, delta, w, 1e-4, base_pair=(a0, a1))
        assert rep.residual <= 1e-3
        assert 0.35 <= rep.halving_ratio <= 0.65

    def test_pair_density_proportional_to_reciprocal_power_on_coaxial_carrier(self):
        a0 = Circle(Point(0.4, 0), 0.8)
        a1 = Circle(Point(-0.3, 0), 3.0)
        from porism.pencils import Pencil, pencil_member

        pen = Pencil.from_circles(a0, a1)
        delta = pencil_member(pen, 0.55)
        d = PairDensity.of_pair(a0, a1)
        vals = []
        for k in range(100):
            p = delta.point_at(k * 0.0628 + 0.013)
            r = d.rho(p)
            if math.isfinite(r):
                vals.append(r * abs(a0.power(p)))
        mean = sum(vals) / len(vals)
        assert max(abs(v - mean) for v in vals) / mean <= 1e-10


class TestPolygonLimit:
    def test_concentric_center(self, concentric_pair):
        a0, _ = concentric_pair
        delta = Circle(Point(0, 0), 2.0)
        rep = jacobi_bertrand_limit_check(a0, delta, [100.0, 1e3, 1e4])
        assert rep.decreasing
        assert rep.deviations[0] <= 3e-4
        assert rep.deviations[2] <= 3e-8

    def test_displaced_center_quadratic_decay(self, concentric_pair):
        # the deviation falls off like 1/r^2 regardless of the center offset
        a0, _ = concentric_pair
        delta = Circle(Point(0, 0), 2.0)
        rep = jacobi_bertrand_limit_check(a0, delta, [1e2, 1e3, 1e4], a1_center=Point(1, 0))
        assert rep.decreasing
        for lo, hi in zip(rep.deviations[1:], rep.deviations):
            assert lo / hi == pytest.approx(1e-2, rel=0.2)

    def test_increasing_radii_required(self, concentric_pair):
        a0, _ = concentric_pair
        with pytest.raises(Exception):
            jacobi_bertrand_limit_check(a0, Circle(Point(0, 0), 2.0), [100.0, 50.0])
