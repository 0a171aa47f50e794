"""Invariant measures on circles and circular closing theorems.

A library and CLI for constructing circular series tangent to a pair of
base circles, integrating the pair measure 1/sqrt(|f0 f1|) along arcs with
singularity-aware quadrature, and numerically verifying the invariance,
pencil, quartic-curve, and conic-bridge identities that make the closing
theorems work.
"""

from .geometry import (
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
from .tangency import (
    TangentCircle,
    classify_index,
    tangency_point,
    tangent_circles_through_point,
)
from .measure import (
    ArcMass,
    PairDensity,
    ZigzagConfig,
    arc_mass,
    black_howland,
    jacobi_bertrand_limit_check,
    rho,
    total_mass,
    verify_invariance,
    verify_prop1,
)
from .series import (
    CircularSeries,
    ClosureReport,
    Scene,
    Tolerances,
    normalize_assumption1,
    rotation_number,
    run_series,
    signed_invariant_check,
    start_circle,
)
from .pencils import (
    PairSequence,
    Pencil,
    diagonal_fixed_circle,
    pencil_member,
    run_generalized_series,
    verify_prop3,
)
from .cyclics import (
    Cyclic,
    CirclePair,
    derive_poncelet_quadric,
    equivalence_witness,
    equivalent_pencil,
    quadric_to_circle_pair,
    verify_prop1_prime,
)

__version__ = "0.1.0"

__all__ = [
    "ArcMass",
    "Circle",
    "CirclePair",
    "CircularSeries",
    "ClosureReport",
    "Cyclic",
    "Inversion",
    "Line",
    "PairDensity",
    "PairSequence",
    "Pencil",
    "Point",
    "Quadric",
    "Scene",
    "TangentCircle",
    "Tolerances",
    "ZigzagConfig",
    "arc_mass",
    "black_howland",
    "circle_circle_intersection",
    "classify_index",
    "derive_poncelet_quadric",
    "diagonal_fixed_circle",
    "equivalence_witness",
    "equivalent_pencil",
    "invert_circle",
    "jacobi_bertrand_limit_check",
    "line_tangency_residual",
    "normalize_assumption1",
    "orientation",
    "pencil_member",
    "power",
    "quadric_eval",
    "quadric_to_circle_pair",
    "rho",
    "rotation_number",
    "run_generalized_series",
    "run_series",
    "signed_invariant_check",
    "start_circle",
    "tangency_point",
    "tangent_circles_through_point",
    "total_mass",
    "verify_invariance",
    "verify_prop1",
    "verify_prop1_prime",
    "verify_prop3",
    "__version__",
]
