import sys
import os
import math
import random
from fractions import Fraction

import mpmath
import pytest

# Add src directory to Python path
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from src.arith.bigreal import BigReal
from src.exceptions import PointNotOnCurveError
from src.model.points import RationalPoint, add_points, map_point, multiply, negate, subtract_points
from src.model.weierstrass import transform_model
from src.heights.archimedean import get_archimedean_method
from src.heights.height import (
    canonical_height,
    canonical_height_limit_oracle,
    height_pairing,
    is_torsion,
    local_height_archimedean,
    local_height_nonarch,
    naive_height,
    needs_archimedean,
    silverman_normalized,
)
from src.heights.nonarch_global import PsiFiniteOptions
from tests.curve_fixtures import (
    HEIGHT_37A,
    curve,
    point,
    random_instance,
    random_pair_instance,
    reference,
    within,
)

ZERO = BigReal.zero(64)


@pytest.fixture
def curve_37a():
    return curve("37a1")


def test_naive_height():
    assert within(naive_height(point(2, 3), 64), reference(lambda: mpmath.log(2)), 64)
    assert naive_height(RationalPoint.infinity(), 64).is_zero()
    assert naive_height(point(0, 1), 64).is_zero()
    x = RationalPoint.affine(Fraction(10, 9), Fraction(136, 27))
    assert within(naive_height(x, 64), reference(lambda: mpmath.log(10)), 64)


def test_is_torsion_and_archimedean_need():
    model = curve("36a1")
    assert is_torsion(model, point(2, 3)) == (True, 6)
    assert is_torsion(curve("37a1"), point(0, 0)) == (False, None)
    assert needs_archimedean(point(2, 3), 6)
    assert needs_archimedean(point(0, 0), None)
    assert not needs_archimedean(point(-1, 0), 2)
    assert not needs_archimedean(RationalPoint.infinity(), 1)


@pytest.mark.parametrize("name, xy, order", [
    ("36a1", (2, 3), 6),
    ("36a1", (0, 1), 3),
    ("11a1", (5, 5), 5),
    ("11a1", (16, 60), 5),
    ("x3+4x", (2, 4), 4),
    ("split", (2, 6), 4),
    ("split", (-2, 2), 4),
])
def test_torsion_components_cancel(name, xy, order):
    """On torsion points h - Ψ∞ - Ψ^f vanishes, even though ĥ is reported as an exact zero."""
    breakdown = canonical_height(curve(name), point(*xy), 64)
    assert breakdown.torsion_order == order
    assert breakdown.is_torsion
    assert breakdown.h_canonical.is_zero()
    residual = breakdown.h_naive - breakdown.psi_infinity - breakdown.psi_finite_value
    assert within(residual, ZERO, 58)


@pytest.mark.parametrize("xy", [(2, 2), (9, 23)])
def test_torsion_components_cancel_on_14a1(xy):
    breakdown = canonical_height(curve("14a1"), point(*xy), 64)
    assert breakdown.torsion_order in (3, 6)
    residual = breakdown.h_naive - breakdown.psi_infinity - breakdown.psi_finite_value
    assert within(residual, ZERO, 58)


def test_two_torsion_skips_archimedean():
    breakdown = canonical_height(curve("36a1"), point(-1, 0), 64)
    assert breakdown.torsion_order == 2
    assert breakdown.psi_infinity is None
    assert breakdown.h_canonical.is_zero()


def test_height_of_infinity():
    breakdown = canonical_height(curve("36a1"), RationalPoint.infinity(), 64)
    assert breakdown.torsion_order == 1
    assert breakdown.h_canonical.is_zero()
    assert breakdown.psi_finite.is_empty


def test_height_37a(curve_37a):
    """ĥ((0, 0)) on y^2 + y = x^3 - x."""
    breakdown = canonical_height(curve_37a, point(0, 0), 64)
    assert not breakdown.is_torsion
    assert breakdown.psi_finite.is_empty
    assert breakdown.precision_bits == 64
    assert abs(float(breakdown.h_canonical) - HEIGHT_37A) < 1e-15


def test_height_37a_with_series_method(curve_37a):
    agm = canonical_height(curve_37a, point(0, 0), 64).h_canonical
    series = canonical_height(
        curve_37a, point(0, 0), 64, method=get_archimedean_method("series", series_terms=40)
    ).h_canonical
    assert within(agm, series, 40)


def test_point_not_on_curve():
    with pytest.raises(PointNotOnCurveError):
        canonical_height(curve("36a1"), point(7, 0), 64)


def test_quadratic_on_random_points():
    """ĥ(2P) = 4ĥ(P), ĥ(3P) = 9ĥ(P) and ĥ(-P) = ĥ(P)."""
    rng = random.Random(41)
    for _ in range(50):
        model, p = random_instance(rng, non_torsion=True)
        h1 = canonical_height(model, p, 128).h_canonical
        h2 = canonical_height(model, multiply(model, p, 2), 128).h_canonical
        h3 = canonical_height(model, multiply(model, p, 3), 128).h_canonical
        assert h1 > 0
        assert within(h2, 4 * h1, 124)
        assert within(h3, 9 * h1, 124)
        assert within(canonical_height(model, negate(model, p), 128).h_canonical, h1, 126)


def test_parallelogram_law():
    """ĥ(P + Q) + ĥ(P - Q) = 2ĥ(P) + 2ĥ(Q) on the rank two curve 389a1."""
    model = curve("389a1")
    p, q = point(-1, 1), point(0, 0)

    def height(r):
        return canonical_height(model, r, 128).h_canonical

    lhs = height(add_points(model, p, q)) + height(subtract_points(model, p, q))
    rhs = 2 * height(p) + 2 * height(q)
    assert within(lhs, rhs, 123)


def test_parallelogram_law_on_random_pairs():
    rng = random.Random(47)
    for _ in range(50):
        model, p, q = random_pair_instance(rng)

        def height(r):
            return canonical_height(model, r, 128).h_canonical

        lhs = height(add_points(model, p, q)) + height(subtract_points(model, p, q))
        rhs = 2 * height(p) + 2 * height(q)
        assert within(lhs, rhs, 123)


def test_psi_finite_options_do_not_change_the_height():
    model = curve("x3+24")
    p = RationalPoint.affine(Fraction(10, 9), Fraction(136, 27))
    baseline = canonical_height(model, p, 64).h_canonical
    options = PsiFiniteOptions(trial_division_bound=50, use_2b4_variant=True, incremental_basis=True)
    assert within(canonical_height(model, p, 64, opts=options).h_canonical, baseline, 62)


@pytest.mark.parametrize("u, r, s, t, xy", [
    (1, 2, -1, 3, (0, 0)),
    (Fraction(1, 2), 0, 0, 0, (1, 0)),
])
def test_height_is_model_independent(curve_37a, u, r, s, t, xy):
    moved, point_map = transform_model(curve_37a, u, r, s, t)
    p = point(*xy)
    before = canonical_height(curve_37a, p, 128).h_canonical
    after = canonical_height(moved, map_point(point_map, p), 128).h_canonical
    assert within(before, after, 124)


def test_height_is_invariant_under_random_integral_changes():
    """[1/u, r, s, t] with integral r, s, t keeps the model integral."""
    rng = random.Random(53)
    for _ in range(50):
        model, p = random_instance(rng, non_torsion=True)
        u = rng.choice([1, -1, 2, 3])
        r, s, t = (rng.randint(-5, 5) for _ in range(3))
        moved, point_map = transform_model(model, Fraction(1, u), r, s, t)
        before = canonical_height(model, p, 128).h_canonical
        after = canonical_height(moved, map_point(point_map, p), 128).h_canonical
        assert within(before, after, 124)


def test_scaled_model_point(curve_37a):
    moved, point_map = transform_model(curve_37a, Fraction(1, 2))
    assert moved.coefficients == (0, 0, 8, -16, 0)
    assert map_point(point_map, point(1, 0)) == point(4, 0)


def test_height_pairing(curve_37a):
    p = point(0, 0)
    h = canonical_height(curve_37a, p, 64).h_canonical
    assert within(height_pairing(curve_37a, p, p, 64), h, 60)
    assert within(height_pairing(curve_37a, p, negate(curve_37a, p), 64), -h, 60)


def test_pairing_with_torsion_vanishes():
    model = curve("x3-2x")
    assert within(height_pairing(model, point(2, 2), point(0, 0), 64), ZERO, 58)


def test_pairing_is_symmetric():
    model = curve("389a1")
    p, q = point(-1, 1), point(0, 0)
    assert within(height_pairing(model, p, q, 64), height_pairing(model, q, p, 64), 60)


def test_limit_oracle_converges(curve_37a):
    """|h(2^n P)/4^n - ĥ(P)| stays below a constant times 4^-n."""
    h = canonical_height(curve_37a, point(0, 0), 80).h_canonical
    for n in range(2, 9):
        estimate = canonical_height_limit_oracle(curve_37a, point(0, 0), n, 80)
        error = abs(float(estimate - h))
        assert error * 4 ** n <= 8


def test_limit_oracle_converges_on_random_points():
    """4^n |h(2^n P)/4^n - ĥ(P)| = |h(Q) - ĥ(Q)| for Q = 2^n P, bounded through h(j) and h(Δ)."""
    rng = random.Random(59)
    for _ in range(20):
        model, p = random_instance(rng, non_torsion=True)
        j = Fraction(model.c4 ** 3, model.delta)
        bound = 3 + (math.log(max(abs(j.numerator), j.denominator)) + math.log(abs(model.delta))) / 4
        h = canonical_height(model, p, 80).h_canonical
        for n in (2, 4, 6, 8):
            estimate = canonical_height_limit_oracle(model, p, n, 80)
            assert abs(float(estimate - h)) * 4 ** n <= bound


def test_limit_oracle_at_ten_doublings(curve_37a):
    h = canonical_height(curve_37a, point(0, 0), 64).h_canonical
    estimate = canonical_height_limit_oracle(curve_37a, point(0, 0), 10, 64)
    assert abs(float(estimate - h)) < 1e-5


def test_limit_oracle_on_torsion_point():
    """The orbit of a torsion point is finite, so h(2^n P) stays bounded."""
    model = curve("36a1")
    for n in (0, 3, 6):
        estimate = canonical_height_limit_oracle(model, point(2, 3), n, 64)
        assert float(estimate) <= 0.7 / 4 ** n


def test_limit_oracle_rejects_too_many_doublings(curve_37a):
    with pytest.raises(ValueError):
        canonical_height_limit_oracle(curve_37a, point(0, 0), 13, 64)


def test_local_heights_nonarch():
    model = curve("36a1")
    assert within(
        local_height_nonarch(model, point(2, 3), 2, 64), reference(lambda: -2 * mpmath.log(2) / 3), 62
    )
    assert within(
        local_height_nonarch(model, point(2, 3), 3, 64), reference(lambda: -mpmath.log(3) / 2), 62
    )
    assert local_height_nonarch(model, point(2, 3), 5, 64).is_zero()
    with pytest.raises(ValueError):
        local_height_nonarch(model, RationalPoint.infinity(), 2, 64)


def test_local_height_with_denominator():
    """x = 10/9 on y^2 = x^3 + 24 has λ̂_3 = log 9."""
    model = curve("x3+24")
    p = RationalPoint.affine(Fraction(10, 9), Fraction(136, 27))
    assert within(local_height_nonarch(model, p, 3, 64), reference(lambda: mpmath.log(9)), 62)


def test_local_heights_sum_to_global():
    """ĥ = λ̂∞ + Σ λ̂_p over the primes of Δ = -2^10 3^5 and of the denominator."""
    model = curve("x3+24")
    assert model.delta == -(2 ** 10) * 3 ** 5
    p = RationalPoint.affine(Fraction(10, 9), Fraction(136, 27))
    total = local_height_archimedean(model, p, 64)
    for prime in (2, 3):
        total = total + local_height_nonarch(model, p, prime, 64)
    assert within(canonical_height(model, p, 64).h_canonical, total, 58)


def test_silverman_normalized(curve_37a):
    assert silverman_normalized(BigReal.from_int(2, 64)).to_fraction() == 1
    lam = local_height_archimedean(curve_37a, point(0, 0), 64)
    expected = (lam - reference(lambda: mpmath.log(37) / 6)).shift(-1)
    assert within(silverman_normalized(lam, curve_37a), expected, 60)


@pytest.mark.slow
def test_high_precision_is_stable(curve_37a):
    """Ten thousand bits agree with a run at 64 extra bits."""
    bits = 10000
    low = canonical_height(curve_37a, point(0, 0), bits).h_canonical
    high = canonical_height(curve_37a, point(0, 0), bits + 64).h_canonical
    assert within(low, high, bits - 1)


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
