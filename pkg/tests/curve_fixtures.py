"""Shared test data: named curves, reduction-type tables and random instances.

The trial factorization in here is test-harness only; the library never
factors anything.
"""

import random
from fractions import Fraction
from typing import Dict, Optional, Set, Tuple

from mpmath import mp, mpf

from src.arith.bigreal import BigReal
from src.exceptions import SingularCurveError
from src.model.points import RationalPoint, torsion_order
from src.model.weierstrass import WeierstrassModel, derive_invariants

# a1, a2, a3, a4, a6
CURVES: Dict[str, Tuple[int, int, int, int, int]] = {
    "11a1": (0, -1, 1, -10, -20),
    "14a1": (1, 0, 1, 4, -6),
    "36a1": (0, 0, 0, 0, 1),
    "37a1": (0, 0, 1, -1, 0),
    "389a1": (0, 1, 1, -2, 0),
    "x3-2": (0, 0, 0, 0, -2),
    "x3-2x": (0, 0, 0, -2, 0),
    "x3+4x": (0, 0, 0, 4, 0),
    "x3+24": (0, 0, 0, 0, 24),
    "split": (0, 5, 0, 4, 0),  # y^2 = x(x + 1)(x + 4)
}

# ĥ((0, 0)) on 37a1 in the doubled normalization, half of that in Silverman's book
HEIGHT_37A = 0.05111140823996884


def curve(name: str) -> WeierstrassModel:
    return derive_invariants(*CURVES[name])


def point(x, y) -> RationalPoint:
    return RationalPoint.affine(Fraction(x), Fraction(y))


def table_values(kind: str, m: int = 0) -> Set[Fraction]:
    """Nonzero values μ can take on a minimal model with the given Kodaira type."""
    if kind == "I":
        return {Fraction(i * (m - i), m) for i in range(1, m)}
    if kind == "III":
        return {Fraction(1, 2)}
    if kind == "IV":
        return {Fraction(2, 3)}
    if kind == "I*":
        return {Fraction(1), Fraction(m + 4, 4)}
    if kind == "IV*":
        return {Fraction(4, 3)}
    if kind == "III*":
        return {Fraction(3, 2)}
    raise ValueError(kind)


def table_bound(kind: str, m: int = 0) -> Fraction:
    return {
        "I": Fraction(m, 4),
        "III": Fraction(1, 2),
        "IV": Fraction(2, 3),
        "I*": Fraction(m + 4, 4),
        "IV*": Fraction(4, 3),
        "III*": Fraction(3, 2),
    }[kind]


# (curve, points, prime, Kodaira type, m) for models minimal at the prime
KODAIRA_FIXTURES = [
    ("11a1", [(5, 5), (16, 60), (5, -6)], 11, "I", 5),
    ("14a1", [(2, 2), (1, -1), (9, 23)], 2, "I", 6),
    ("14a1", [(2, 2), (1, -1), (9, 23)], 7, "I", 3),
    ("36a1", [(2, 3), (0, 1), (-1, 0)], 2, "IV", 0),
    ("36a1", [(2, 3), (0, 1), (-1, 0)], 3, "III", 0),
]


def trial_factor(n: int) -> Dict[int, int]:
    """Prime factorization of |n| by trial division."""
    n = abs(n)
    factors: Dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def random_instance(
    rng: random.Random, coeff_bound: int = 10, point_bound: int = 6, non_torsion: bool = False
) -> Tuple[WeierstrassModel, RationalPoint]:
    """A random integral model through a random integral point.

    a1..a4 and the point are drawn first, a6 is solved for.
    """
    while True:
        a1, a2, a3, a4 = (rng.randint(-coeff_bound, coeff_bound) for _ in range(4))
        x = rng.randint(-point_bound, point_bound)
        y = rng.randint(-point_bound, point_bound)
        a6 = y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x
        try:
            model = derive_invariants(a1, a2, a3, a4, a6)
        except SingularCurveError:
            continue
        p = point(x, y)
        order: Optional[int] = torsion_order(model, p)
        if non_torsion and order is not None:
            continue
        if order is not None and order <= 2:
            continue
        return model, p


def random_pair_instance(
    rng: random.Random, coeff_bound: int = 10, point_bound: int = 6
) -> Tuple[WeierstrassModel, RationalPoint, RationalPoint]:
    """A random integral model through two non-torsion integral points with distinct x.

    a1, a2, a3 and both points are drawn first; a4 and a6 are solved for and
    the draw is repeated until a4 comes out integral.
    """
    while True:
        a1, a2, a3 = (rng.randint(-coeff_bound, coeff_bound) for _ in range(3))
        x1, y1, x2, y2 = (rng.randint(-point_bound, point_bound) for _ in range(4))
        if x1 == x2:
            continue
        r1 = y1 * y1 + a1 * x1 * y1 + a3 * y1 - x1 ** 3 - a2 * x1 * x1
        r2 = y2 * y2 + a1 * x2 * y2 + a3 * y2 - x2 ** 3 - a2 * x2 * x2
        if (r1 - r2) % (x1 - x2) != 0:
            continue
        a4 = (r1 - r2) // (x1 - x2)
        a6 = r1 - a4 * x1
        try:
            model = derive_invariants(a1, a2, a3, a4, a6)
        except SingularCurveError:
            continue
        p, q = point(x1, y1), point(x2, y2)
        if torsion_order(model, p) is not None or torsion_order(model, q) is not None:
            continue
        return model, p, q


def reference(expression, prec: int = 400) -> BigReal:
    """Evaluate a callable of no arguments with mpmath at ``prec`` bits."""
    with mp.workprec(prec):
        value = mpf(expression())
    return BigReal(value._mpf_, prec)


def within(a: BigReal, b: BigReal, bits: int) -> bool:
    """|a - b| <= 2^-bits."""
    return abs(a - b) <= Fraction(1, 2 ** bits)
