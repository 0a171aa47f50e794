import math
import random

import pytest

from porism import (
    Circle,
    Inversion,
    Line,
    Point,
    Quadric,
    circle_circle_intersection,
    invert_circle,
    line_tangency_residual,
    orientation,
    power,
    quadric_eval,
)
from porism.errors import CoincidentCircles, DegenerateRestriction, GeometryError


class TestPower:
    def test_point_on_circle(self):
        assert power(Circle(Point(0, 0), 2), Point(2, 0)) == 0.0

    def test_center_gives_minus_r_squared(self):
        assert power(Circle(Point(0, 0), 2), Point(0, 0)) == -4.0

    def test_outside_point(self):
        # |(3,4)|^2 - 4 = 25 - 4
        assert power(Circle(Point(0, 0), 2), Point(3, 4)) == pytest.approx(21.0, abs=0)

    def test_expanded_coefficients_match(self):
        rng = random.Random(1)
        for _ in range(100):
            c = Circle(Point(rng.uniform(-3, 3), rng.uniform(-3, 3)), rng.uniform(0.1, 4))
            p = Point(rng.uniform(-5, 5), rng.uniform(-5, 5))
            expanded = p.norm2() + c.linear_coeff.dot(p) + c.const_coeff
            assert expanded == pytest.approx(c.power(p), rel=1e-12, abs=1e-12)

    def test_zero_power_iff_on_circle(self):
        c = Circle(Point(0.7, -0.2), 1.3)
        for k in range(16):
            p = c.point_at(k * math.pi / 8)
            assert abs(c.power(p)) <= 1e-12 * max(1.0, p.norm2())


class TestIntersection:
    def test_two_points(self):
        pts = circle_circle_intersection(Circle(Point(0, 0), math.sqrt(3)), Circle(Point(2, 0), 1))
        assert len(pts) == 2
        expected = {(1.5, math.sqrt(3) / 2), (1.5, -math.sqrt(3) / 2)}
        got = {(round(p.x, 12), round(p.y, 12)) for p in pts}
        assert got == {(round(x, 12), round(y, 12)) for x, y in expected}

    def test_external_tangency(self):
        pts = circle_circle_intersection(Circle(Point(0, 0), 1), Circle(Point(2, 0), 1))
        assert len(pts) == 1
        assert pts[0].dist(Point(1, 0)) <= 1e-12

    def test_disjoint(self):
        assert circle_circle_intersection(Circle(Point(0, 0), 1), Circle(Point(4, 0), 1)) == []

    def test_coincident_raises(self):
        with pytest.raises(CoincidentCircles):
            circle_circle_intersection(Circle(Point(0, 0), 1), Circle(Point(0, 0), 1))

    def test_intersections_have_zero_power(self):
        rng = random.Random(2)
        for _ in range(200):
            a = Circle(Point(rng.uniform(-2, 2), rng.uniform(-2, 2)), rng.uniform(0.5, 2.5))
            b = Circle(Point(rng.uniform(-2, 2), rng.uniform(-2, 2)), rng.uniform(0.5, 2.5))
            try:
                pts = circle_circle_intersection(a, b)
            except CoincidentCircles:
                continue
            for p in pts[:2] if len(pts) == 2 else []:
                assert abs(a.power(p)) <= 1e-10
                assert abs(b.power(p)) <= 1e-10


class TestOrientation:
    def test_positive_basis(self):
        assert orientation(Point(0, 0), Point(1, 0), Point(0, 1)) == 1

    def test_swap_flips(self):
        assert orientation(Point(0, 0), Point(0, 1), Point(1, 0)) == -1

    def test_collinear(self):
        assert orientation(Point(0, 0), Point(1, 1), Point(2, 2)) == 0

    def test_antisymmetric_under_transpositions(self):
        rng = random.Random(3)
        for _ in range(300):
            a, b, c = (Point(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(3))
            s = orientation(a, b, c)
            if s == 0:
                continue
            assert orientation(b, a, c) == -s
            assert orientation(a, c, b) == -s
            assert orientation(c, b, a) == -s


class TestInversion:
    def test_circle_not_through_center(self):
        img = invert_circle(Inversion(Point(0, 0), 1), Circle(Point(3, 0), 1))
        assert isinstance(img, Circle)
        assert img.center.dist(Point(3 / 8, 0)) <= 1e-14
        assert img.radius == pytest.approx(1 / 8, abs=1e-14)

    def test_unit_circle_fixed(self):
        img = invert_circle(Inversion(Point(0, 0), 1), Circle(Point(0, 0), 1))
        assert isinstance(img, Circle)
        assert img.center.dist(Point(0, 0)) == 0 and img.radius == 1.0

    def test_circle_through_center_maps_to_line(self):
        img = invert_circle(Inversion(Point(0, 0), 1), Circle(Point(1, 0), 1))
        assert isinstance(img, Line)
        assert img.normal.dist(Point(1, 0)) <= 1e-14
        assert img.offset == pytest.approx(0.5, abs=1e-14)

    def test_involution_on_circles(self):
        rng = random.Random(4)
        for _ in range(200):
            inv = Inversion(
                Point(rng.uniform(-1, 1), rng.uniform(-1, 1)), rng.choice([1.0, 2.5, -1.5])
            )
            c = Circle(Point(rng.uniform(-3, 3), rng.uniform(-3, 3)), rng.uniform(0.2, 1.5))
            if abs(c.power(inv.center)) < 0.05:
                continue
            img = inv.apply_circle(c)
            assert isinstance(img, Circle)
            back = inv.apply_circle(img)
            assert isinstance(back, Circle)
            assert back.center.dist(c.center) <= 1e-10
            assert abs(back.radius - c.radius) <= 1e-10

    def test_line_circle_round_trip(self):
        inv = Inversion(Point(0.3, -0.4), 2.0)
        line = Line.through_points(Point(1, 0.2), Point(2, 1.7))
        img = inv.apply_line(line)
        assert isinstance(img, Circle)
        back = inv.apply_circle(img)
        assert isinstance(back, Line)
        assert back.is_same(line, 1e-10)

    def test_points_transform_consistently(self):
        # images of diametral points (2,0), (4,0) are (1/2,0), (1/4,0)
        inv = Inversion(Point(0, 0), 1)
        assert inv.apply(Point(2, 0)).dist(Point(0.5, 0)) <= 1e-15
        assert inv.apply(Point(4, 0)).dist(Point(0.25, 0)) <= 1e-15


class TestQuadric:
    def test_eval(self):
        q = Quadric(1, 0, 1, 0, 0, 0)
        assert quadric_eval(q, Point(2.0, -3.0)) == 13.0

    def test_tangent_line_zero_residual(self):
        q = Quadric(1, 0, 1, 0, 0, -49.0 / 16.0)
        line = Line(Point(1, 0), 7.0 / 4.0)
        assert abs(line_tangency_residual(q, line)) <= 1e-12

    def test_secant_line_positive_residual(self):
        q = Quadric(1, 0, 1, 0, 0, -1.0)
        assert line_tangency_residual(q, Line(Point(1, 0), 0.0)) > 0.1

    def test_degenerate_restriction_raises(self):
        # x^2 restricted to the line x = 0 is identically zero in the
        # quadratic and linear parts
        q = Quadric(1, 0, 0, 0, 0, 1.0)
        with pytest.raises(DegenerateRestriction):
            line_tangency_residual(q, Line(Point(1, 0), 0.0))

    def test_from_circle_matches_power(self):
        c = Circle(Point(0.4, -1.1), 1.7)
        q = Quadric.from_circle(c)
        for k in range(20):
            p = Point(math.cos(k), math.sin(2 * k))
            assert q(p) == pytest.approx(c.power(p), rel=1e-13, abs=1e-13)

    def test_invalid_circle_rejected(self):
        with pytest.raises(GeometryError):
            Circle(Point(0, 0), -1.0)
        with pytest.raises(GeometryError):
            Circle(Point(0, 0), math.inf)
