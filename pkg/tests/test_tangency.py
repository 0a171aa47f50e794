import math
import random

import pytest

from porism import Circle, Point, classify_index, tangency_point, tangent_circles_through_point
from porism.errors import NoRealSolution, NotTangent, PointOnBaseCircle
from porism.tangency import circles_through_points_tangent_to, common_tangent_lines
from conftest import make_nested_scene


class TestClassifyIndex:
    def test_one_interior_tangency(self):
        w = Circle(Point(2, 0), 1)
        assert classify_index(w, Circle(Point(0, 0), 1), Circle(Point(0, 0), 3)) == 1

    def test_two_interior_tangencies(self):
        w = Circle(Point(0, 0), 2)
        assert classify_index(w, Circle(Point(1, 0), 1), Circle(Point(-1, 0), 1)) == 0

    def test_not_tangent(self):
        with pytest.raises(NotTangent):
            classify_index(Circle(Point(5, 5), 1), Circle(Point(0, 0), 1), Circle(Point(0, 0), 3))


class TestTangencyPoint:
    def test_external(self):
        p = tangency_point(Circle(Point(2, 0), 1), Circle(Point(0, 0), 1))
        assert p.dist(Point(1, 0)) <= 1e-12

    def test_interior(self):
        p = tangency_point(Circle(Point(2, 0), 1), Circle(Point(0, 0), 3))
        assert p.dist(Point(3, 0)) <= 1e-12

    def test_concentric_raises(self):
        with pytest.raises(NotTangent):
            tangency_point(Circle(Point(0, 0), 1), Circle(Point(0, 0), 3))


class TestCommonTangents:
    def test_separated_circles_have_four(self):
        a, b = Circle(Point(0, 0), 1), Circle(Point(4, 0), 1)
        lines = common_tangent_lines(a, b)
        assert len(lines) == 4
        for ln in lines:
            assert abs(ln.distance(a.center) - a.radius) <= 1e-12
            assert abs(ln.distance(b.center) - b.radius) <= 1e-12

    def test_nested_circles_have_none(self):
        assert common_tangent_lines(Circle(Point(0, 0), 1), Circle(Point(0.2, 0), 3)) == []


class TestThroughPoint:
    def test_concentric_index1_pair(self, concentric_pair):
        a0, a1 = concentric_pair
        sols = tangent_circles_through_point(a0, a1, Point(2, 0), 1)
        assert len(sols) == 2
        # centers at distance 2 from the origin, at angle with cos = 7/8
        for s in sols:
            assert s.circle.radius == pytest.approx(1.0, abs=1e-12)
            assert s.circle.center.norm() == pytest.approx(2.0, abs=1e-12)
            assert s.circle.center.x == pytest.approx(2 * 7 / 8, abs=1e-12)
            assert s.index == 1

    def test_point_on_base_circle(self, concentric_pair):
        a0, a1 = concentric_pair
        with pytest.raises(PointOnBaseCircle):
            tangent_circles_through_point(a0, a1, Point(1, 0), 1)

    def test_index0_family(self, concentric_pair):
        a0, a1 = concentric_pair
        sols = tangent_circles_through_point(a0, a1, Point(2, 0), 0)
        assert len(sols) == 2
        for s in sols:
            assert classify_index(s.circle, a0, a1) == 0
            assert abs(s.circle.power(Point(2, 0))) <= 1e-9
            d0 = s.circle.center.dist(a0.center)
            d1 = s.circle.center.dist(a1.center)
            assert min(abs(d0 - (s.circle.radius + 1)), abs(d0 - abs(s.circle.radius - 1))) <= 1e-9
            assert min(abs(d1 - (s.circle.radius + 3)), abs(d1 - abs(s.circle.radius - 3))) <= 1e-9

    def test_no_real_solution(self, concentric_pair):
        a0, a1 = concentric_pair
        # points outside the outer circle admit no index-1 circle
        with pytest.raises(NoRealSolution):
            tangent_circles_through_point(a0, a1, Point(5, 0), 1)

    def test_solutions_pass_checks_on_random_scenes(self):
        rng = random.Random(11)
        for _ in range(150):
            scene = make_nested_scene(rng)
            theta = rng.uniform(0, 2 * math.pi)
            p = scene.delta.point_at(theta)
            sols = tangent_circles_through_point(scene.alpha0, scene.alpha1, p, 1)
            assert len(sols) == 2
            for s in sols:
                assert abs(s.circle.power(p)) <= 1e-9
                # touch points lie on both circles
                assert abs(s.circle.power(s.touch0)) <= 1e-9
                assert abs(scene.alpha0.power(s.touch0)) <= 1e-9
                assert abs(s.circle.power(s.touch1)) <= 1e-9
                assert abs(scene.alpha1.power(s.touch1)) <= 1e-9
                assert classify_index(s.circle, scene.alpha0, scene.alpha1) == 1

    def test_family_closure_through_second_intersection(self, concentric_pair):
        # the two family members through the second intersection point of a
        # returned circle with a probe circle are again tangent to both bases
        a0, a1 = concentric_pair
        w = tangent_circles_through_point(a0, a1, Point(2, 0), 1)[0]
        probe = Circle(Point(0, 0), 2.2)
        from porism import circle_circle_intersection

        pts = circle_circle_intersection(w.circle, probe)
        assert len(pts) == 2
        again = tangent_circles_through_point(a0, a1, pts[1], 1)
        assert len(again) == 2
        assert any(g.circle.is_same(w.circle, 1e-9) for g in again)


class TestPointPointCircle:
    def test_both_kinds_returned(self):
        sols = circles_through_points_tangent_to(Point(2, 0), Point(0, 2), Circle(Point(0, 0), 1))
        kinds = {k for _, _, k in sols}
        assert kinds == {"exterior", "interior"}
        for c, touch, _ in sols:
            assert abs(c.power(Point(2, 0))) <= 1e-9
            assert abs(c.power(Point(0, 2))) <= 1e-9
            assert abs(c.power(touch)) <= 1e-9

    def test_point_on_base_rejected(self):
        with pytest.raises(PointOnBaseCircle):
            circles_through_points_tangent_to(Point(1, 0), Point(0, 2), Circle(Point(0, 0), 1))
