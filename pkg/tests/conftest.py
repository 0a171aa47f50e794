import math
import random

import pytest

from porism import Circle, Point, Scene, Tolerances


def make_nested_scene(rng: random.Random, quad_tol: float = 1e-10) -> Scene:
    """Random scene with the inner base strictly inside the carrier strictly
    inside the outer base, with comfortable margins."""
    c0 = Point(rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3))
    r0 = rng.uniform(0.4, 0.9)
    rd = r0 + c0.norm() + rng.uniform(0.4, 1.0)
    c1 = Point(rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3))
    r1 = rd + c1.norm() + rng.uniform(0.6, 1.5)
    return Scene(
        Circle(c0, r0), Circle(c1, r1), Circle(Point(0.0, 0.0), rd), 1,
        Tolerances(quad=quad_tol),
    )


@pytest.fixture
def closing_scene() -> Scene:
    """Concentric radii 1 and 3 with carrier radius sqrt(3): closes in 6 steps."""
    return Scene(
        Circle(Point(0.0, 0.0), 1.0),
        Circle(Point(0.0, 0.0), 3.0),
        Circle(Point(0.0, 0.0), math.sqrt(3.0)),
        1,
    )


@pytest.fixture
def concentric_pair():
    return Circle(Point(0.0, 0.0), 1.0), Circle(Point(0.0, 0.0), 3.0)
