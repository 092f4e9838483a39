import sys
import os
import random
from fractions import Fraction

import pytest

# Add src directory to Python path
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from src.exceptions import NonIntegralResultError, PointNotOnCurveError, SingularCurveError
from src.model.kummer import (
    INFINITY,
    KummerPair,
    duplicate_kummer,
    duplicate_primitive,
    kummer_primitive,
)
from src.model.points import (
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
from src.model.weierstrass import derive_invariants, transform_model
from tests.curve_fixtures import curve, point, random_instance


@pytest.fixture
def x3_plus_1():
    """y^2 = x^3 + 1 (36a1), torsion group of order 6."""
    return curve("36a1")


@pytest.mark.parametrize("coeffs, expected", [
    ((0, 0, 0, 0, 1), (0, 0, 4, 0, -432)),
    ((0, 0, 1, -1, 0), (0, -2, 1, -1, 37)),
    ((0, -1, 1, -10, -20), (-4, -20, -79, -21, -161051)),
    ((1, 0, 1, 4, -6), (1, 9, -23, -26, -21952)),
])
def test_derive_invariants(coeffs, expected):
    model = derive_invariants(*coeffs)
    assert (model.b2, model.b4, model.b6, model.b8, model.delta) == expected
    assert model.coefficients == coeffs


def test_singular_curve_rejected():
    with pytest.raises(SingularCurveError):
        derive_invariants(0, 0, 0, 0, 0)
    with pytest.raises(SingularCurveError):
        derive_invariants(0, 0, 0, -3, 2)  # (x - 1)^2 (x + 2)


def test_b8_identity():
    """4 b8 = b2 b6 - b4^2 on random coefficients."""
    rng = random.Random(7)
    checked = 0
    while checked < 1000:
        coeffs = [rng.randint(-10 ** 6, 10 ** 6) for _ in range(5)]
        try:
            model = derive_invariants(*coeffs)
        except SingularCurveError:
            continue
        assert 4 * model.b8 == model.b2 * model.b6 - model.b4 ** 2
        checked += 1


def test_kummer_primitive():
    assert kummer_primitive(point(2, 3)) == KummerPair(2, 1)
    assert kummer_primitive(RationalPoint.infinity()) == INFINITY
    assert kummer_primitive(RationalPoint(Fraction(10, 9), Fraction(0))) == KummerPair(10, 9)
    assert kummer_primitive(RationalPoint(Fraction(-3, 4), Fraction(0))) == KummerPair(-3, 4)
    with pytest.raises(ValueError):
        KummerPair(0, 0)


def test_duplicate_kummer(x3_plus_1):
    """δ on y^2 = x^3 + 1, including O and degree-4 homogeneity."""
    assert duplicate_kummer(KummerPair(2, 1), x3_plus_1) == KummerPair(0, 36)
    assert duplicate_kummer(KummerPair(1, 0), x3_plus_1) == KummerPair(1, 0)
    assert duplicate_kummer(KummerPair(4, 2), x3_plus_1) == KummerPair(0, 576)

    pair, g = duplicate_primitive(KummerPair(2, 1), x3_plus_1)
    assert (pair, g) == (KummerPair(0, 1), 36)


def test_duplication_homogeneous():
    rng = random.Random(11)
    for _ in range(100):
        model, p = random_instance(rng)
        pair = kummer_primitive(p)
        scale = rng.randint(2, 50)
        scaled = duplicate_kummer(KummerPair(scale * pair.x1, scale * pair.x2), model)
        plain = duplicate_kummer(pair, model)
        assert (scaled.x1, scaled.x2) == (scale ** 4 * plain.x1, scale ** 4 * plain.x2)


def test_duplication_matches_group_law():
    """Primitive δ of κ(P) is κ(2P) whenever 2P != O."""
    rng = random.Random(13)
    for _ in range(100):
        model, p = random_instance(rng)
        doubled = double_point(model, p)
        if doubled.is_infinity:
            continue
        pair, g = duplicate_primitive(kummer_primitive(p), model)
        assert pair == kummer_primitive(doubled)
        assert model.delta % g == 0


def test_group_law(x3_plus_1):
    """Hand-checked doublings and the order-6 orbit of (2, 3)."""
    p = point(2, 3)
    assert double_point(x3_plus_1, p) == point(0, 1)
    assert double_point(x3_plus_1, point(0, 1)) == point(0, -1)
    assert double_point(x3_plus_1, RationalPoint.infinity()).is_infinity
    assert multiply(x3_plus_1, p, 3) == point(-1, 0)
    assert multiply(x3_plus_1, p, 6).is_infinity
    assert multiply(x3_plus_1, p, -1) == negate(x3_plus_1, p) == point(2, -3)
    assert subtract_points(x3_plus_1, p, p).is_infinity
    assert add_points(x3_plus_1, p, RationalPoint.infinity()) == p


def test_group_law_stays_on_curve():
    rng = random.Random(17)
    for _ in range(50):
        model, p = random_instance(rng, non_torsion=True)
        q = double_point(model, p)
        r = add_points(model, p, q)
        assert on_curve(model, q) and on_curve(model, r)
        assert add_points(model, q, p) == r
        assert subtract_points(model, r, q) == p


@pytest.mark.parametrize("name, xy, order", [
    ("36a1", (2, 3), 6),
    ("36a1", (0, 1), 3),
    ("36a1", (-1, 0), 2),
    ("11a1", (5, 5), 5),
    ("14a1", (1, -1), 2),
    ("37a1", (0, 0), None),
])
def test_torsion_order(name, xy, order):
    assert torsion_order(curve(name), point(*xy)) == order


def test_torsion_order_of_infinity(x3_plus_1):
    assert torsion_order(x3_plus_1, RationalPoint.infinity()) == 1


def test_require_on_curve(x3_plus_1):
    require_on_curve(x3_plus_1, point(2, 3))
    with pytest.raises(PointNotOnCurveError):
        require_on_curve(x3_plus_1, point(7, 0))


def test_transform_identity_and_translation(x3_plus_1):
    same, _ = transform_model(x3_plus_1, 1)
    assert same == x3_plus_1

    shifted, point_map = transform_model(x3_plus_1, 1, r=1)
    assert shifted.coefficients == (0, 3, 0, 3, 2)
    assert shifted.delta == x3_plus_1.delta
    assert map_point(point_map, point(2, 3)) == point(1, 3)


def test_transform_scaling():
    """u = 2 divides Δ by 2^12; the reverse substitution stays integral."""
    big = derive_invariants(0, 0, 0, 0, 64)
    small, point_map = transform_model(big, 2)
    assert small.coefficients == (0, 0, 0, 0, 1)
    assert small.delta * 4096 == big.delta
    assert map_point(point_map, point(8, 24)) == point(2, 3)

    with pytest.raises(NonIntegralResultError):
        transform_model(curve("37a1"), 2)


def test_transform_round_trip():
    """Applying a change of variables and then its inverse is the identity."""
    rng = random.Random(19)
    for _ in range(50):
        model, p = random_instance(rng)
        u = Fraction(1, rng.choice([1, 2, 3]))
        r, s, t = (rng.randint(-5, 5) for _ in range(3))
        moved, forward = transform_model(model, u, r, s, t)
        q = map_point(forward, p)
        assert on_curve(moved, q)
        assert moved.delta == model.delta * u ** -12

        inverse = forward.inverse()
        back, backward = transform_model(moved, inverse.u, inverse.r, inverse.s, inverse.t)
        assert back == model
        assert map_point(backward, q) == p


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
