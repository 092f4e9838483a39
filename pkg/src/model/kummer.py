"""Kummer coordinates on E/{±1} and the duplication quartics δ1, δ2."""

from dataclasses import dataclass
from math import gcd
from typing import Tuple

from .points import RationalPoint
from .weierstrass import WeierstrassModel


@dataclass(frozen=True)
class KummerPair:
    """Integer pair (x1, x2) standing for the point with x = x1/x2 (O when x2 = 0)."""

    x1: int
    x2: int

    def __post_init__(self) -> None:
        if self.x1 == 0 and self.x2 == 0:
            raise ValueError("(0, 0) is not a Kummer pair")

    @property
    def height_bound(self) -> int:
        return max(abs(self.x1), abs(self.x2))

    def is_primitive(self) -> bool:
        return gcd(self.x1, self.x2) == 1 and self.x2 >= 0

    def primitive(self) -> "KummerPair":
        """Divide out the content and normalize the sign so that x2 >= 0."""
        return self.divide(gcd(self.x1, self.x2))

    def divide(self, g: int) -> "KummerPair":
        """Exact division by a common divisor g > 0, then sign normalization."""
        x1, x2 = self.x1 // g, self.x2 // g
        if x2 < 0 or (x2 == 0 and x1 < 0):
            x1, x2 = -x1, -x2
        return KummerPair(x1, x2)


INFINITY = KummerPair(1, 0)


def kummer_primitive(point: RationalPoint) -> KummerPair:
    if point.is_infinity:
        return INFINITY
    return KummerPair(point.x.numerator, point.x.denominator)


def delta_polynomials(x1: int, x2: int, model: WeierstrassModel) -> Tuple[int, int]:
    """(δ1, δ2) evaluated exactly; works on any ring with + and * (ints, residues, reals)."""
    b2, b4, b6, b8 = model.b2, model.b4, model.b6, model.b8
    s1, s2 = x1 * x1, x2 * x2
    p12 = x1 * x2
    d1 = s1 * s1 - b4 * s1 * s2 - 2 * b6 * p12 * s2 - b8 * s2 * s2
    d2 = 4 * s1 * p12 + b2 * s1 * s2 + 2 * b4 * p12 * s2 + b6 * s2 * s2
    return d1, d2


def duplicate_kummer(pair: KummerPair, model: WeierstrassModel) -> KummerPair:
    """(δ1(x1, x2), δ2(x1, x2)): a Kummer pair for 2P, not reduced."""
    d1, d2 = delta_polynomials(pair.x1, pair.x2, model)
    if d1 == 0 and d2 == 0:
        raise ArithmeticError("duplication returned (0, 0) on a nonsingular model")
    return KummerPair(d1, d2)


def duplicate_primitive(pair: KummerPair, model: WeierstrassModel) -> Tuple[KummerPair, int]:
    """Primitive Kummer pair of 2P together with g = gcd(δ1, δ2).

    For a primitive input g divides Δ, so the gcd is taken against |Δ| on
    residues instead of on the full-size quartic values.
    """
    doubled = duplicate_kummer(pair, model)
    modulus = abs(model.delta)
    g = gcd(modulus, doubled.x1 % modulus, doubled.x2 % modulus)
    return doubled.divide(g), g
