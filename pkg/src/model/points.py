"""Rational points and the exact chord-tangent group law."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..exceptions import PointNotOnCurveError
from .weierstrass import PointMap, WeierstrassModel

# Mazur: a torsion point of E(Q) has order at most 12
MAX_TORSION_ORDER = 12


@dataclass(frozen=True)
class RationalPoint:
    """A point of E(Q); ``x is None`` encodes the point at infinity O."""

    x: Optional[Fraction] = None
    y: Optional[Fraction] = None

    @classmethod
    def infinity(cls) -> "RationalPoint":
        return cls()

    @classmethod
    def affine(cls, x, y) -> "RationalPoint":
        return cls(Fraction(x), Fraction(y))

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __str__(self) -> str:
        if self.is_infinity:
            return "O"
        return f"({self.x}, {self.y})"


def on_curve(model: WeierstrassModel, point: RationalPoint) -> bool:
    if point.is_infinity:
        return True
    return model.contains(point.x, point.y)


def require_on_curve(model: WeierstrassModel, point: RationalPoint) -> None:
    if not on_curve(model, point):
        raise PointNotOnCurveError(f"{point} is not on the curve {model}")


def negate(model: WeierstrassModel, point: RationalPoint) -> RationalPoint:
    if point.is_infinity:
        return point
    return RationalPoint(point.x, -point.y - model.a1 * point.x - model.a3)


def add_points(model: WeierstrassModel, p: RationalPoint, q: RationalPoint) -> RationalPoint:
    """P + Q by the chord-tangent construction over Q."""
    if p.is_infinity:
        return q
    if q.is_infinity:
        return p
    a1, a2, a3, a4, a6 = model.coefficients
    if p.x == q.x:
        if p.y + q.y + a1 * q.x + a3 == 0:
            return RationalPoint.infinity()
        denom = 2 * p.y + a1 * p.x + a3
        slope = (3 * p.x * p.x + 2 * a2 * p.x + a4 - a1 * p.y) / denom
        intercept = (-p.x ** 3 + a4 * p.x + 2 * a6 - a3 * p.y) / denom
    else:
        slope = (q.y - p.y) / (q.x - p.x)
        intercept = (p.y * q.x - q.y * p.x) / (q.x - p.x)
    x3 = slope * slope + a1 * slope - a2 - p.x - q.x
    y3 = -(slope + a1) * x3 - intercept - a3
    return RationalPoint(x3, y3)


def double_point(model: WeierstrassModel, point: RationalPoint) -> RationalPoint:
    return add_points(model, point, point)


def subtract_points(model: WeierstrassModel, p: RationalPoint, q: RationalPoint) -> RationalPoint:
    return add_points(model, p, negate(model, q))


def multiply(model: WeierstrassModel, point: RationalPoint, n: int) -> RationalPoint:
    """nP by double-and-add."""
    if n < 0:
        return multiply(model, negate(model, point), -n)
    result = RationalPoint.infinity()
    addend = point
    while n:
        if n & 1:
            result = add_points(model, result, addend)
        n >>= 1
        if n:
            addend = double_point(model, addend)
    return result


def map_point(point_map: PointMap, point: RationalPoint) -> RationalPoint:
    """Carry a point along a change of variables."""
    if point.is_infinity:
        return point
    return RationalPoint(*point_map.forward(point.x, point.y))


def torsion_order(model: WeierstrassModel, point: RationalPoint) -> Optional[int]:
    """Exact order of a torsion point, or None if the point has infinite order.

    Multiples kP are formed for k <= 12.  On an integral model every torsion
    point has x-denominator dividing 4, so the search stops as soon as a
    multiple violates that.
    """
    current = point
    for k in range(1, MAX_TORSION_ORDER + 1):
        if current.is_infinity:
            return k
        if 4 % current.x.denominator != 0:
            return None
        current = add_points(model, current, point)
    return None
