from .kummer import (
    INFINITY,
    KummerPair,
    delta_polynomials,
    duplicate_kummer,
    duplicate_primitive,
    kummer_primitive,
)
from .points import (
    MAX_TORSION_ORDER,
    RationalPoint,
    add_points,
    double_point,
    map_point,
    multiply,
    negate,
    on_curve,
    require_on_curve,
    subtract_points,
    torsion_order,
)
from .weierstrass import PointMap, WeierstrassModel, derive_invariants, transform_model

__all__ = [
    "INFINITY",
    "KummerPair",
    "MAX_TORSION_ORDER",
    "PointMap",
    "RationalPoint",
    "WeierstrassModel",
    "add_points",
    "delta_polynomials",
    "derive_invariants",
    "double_point",
    "duplicate_kummer",
    "duplicate_primitive",
    "kummer_primitive",
    "map_point",
    "multiply",
    "negate",
    "on_curve",
    "require_on_curve",
    "subtract_points",
    "torsion_order",
    "transform_model",
]
