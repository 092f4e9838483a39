"""Canonical height ĥ(P) = h(P) - Ψ∞(P) - Ψ^f(P) and related quantities.

All heights use the normalization in which ĥ is twice the height of
Silverman's textbook; :func:`silverman_normalized` converts.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from ..arith.bigreal import BigReal, log_of_int
from ..arith.integers import valuation
from ..model.kummer import duplicate_primitive, kummer_primitive
from ..model.points import RationalPoint, add_points, require_on_curve, torsion_order
from ..model.weierstrass import WeierstrassModel
from .archimedean.base import ArchimedeanMethod, get_archimedean_method
from .nonarch_global import FormalLogSum, PsiFiniteOptions, psi_finite
from .nonarch_local import mu_at

logger = logging.getLogger(__name__)

GUARD_BITS = 8


@dataclass(frozen=True)
class HeightBreakdown:
    """ĥ(P) together with the terms it was assembled from."""

    h_naive: BigReal
    psi_finite: FormalLogSum
    psi_finite_value: BigReal
    psi_infinity: Optional[BigReal]
    h_canonical: BigReal
    precision_bits: int
    torsion_order: Optional[int] = None

    @property
    def is_torsion(self) -> bool:
        return self.torsion_order is not None


def naive_height(point: RationalPoint, bits: int) -> BigReal:
    """h(P) = log max(|x1|, x2) on the primitive Kummer pair; h(O) = 0."""
    if point.is_infinity:
        return BigReal.zero(bits + GUARD_BITS)
    pair = kummer_primitive(point)
    return log_of_int(pair.height_bound, bits)


def is_torsion(model: WeierstrassModel, point: RationalPoint) -> Tuple[bool, Optional[int]]:
    """(True, order) for a torsion point, (False, None) otherwise."""
    order = torsion_order(model, point)
    return order is not None, order


def needs_archimedean(point: RationalPoint, order: Optional[int]) -> bool:
    """Whether Ψ∞ is computed: never for O or for points with 2P = O."""
    return not point.is_infinity and (order is None or order > 2)


def assemble_breakdown(
    point: RationalPoint,
    bits: int,
    order: Optional[int],
    finite: FormalLogSum,
    archimedean: Optional[BigReal],
) -> HeightBreakdown:
    """Combine the separately computed terms into a HeightBreakdown.

    Torsion points get an exact zero whatever the terms evaluate to.
    """
    work = bits + GUARD_BITS
    h = naive_height(point, work)
    finite_value = finite.evaluate(work)
    if order is not None:
        logger.debug(f"{point} is torsion of order {order}")
        return HeightBreakdown(h, finite, finite_value, archimedean, BigReal.zero(work), bits, order)
    value = h - archimedean - finite_value
    return HeightBreakdown(h, finite, finite_value, archimedean, value, bits, None)


def _assemble(
    model: WeierstrassModel,
    point: RationalPoint,
    bits: int,
    opts: PsiFiniteOptions,
    method: ArchimedeanMethod,
) -> HeightBreakdown:
    order = torsion_order(model, point)
    finite = psi_finite(point, model, opts)
    archimedean = None
    if needs_archimedean(point, order):
        archimedean = method.psi_infinity(model, point, bits + GUARD_BITS)
    elif point.is_infinity:
        archimedean = BigReal.zero(bits + GUARD_BITS)
    return assemble_breakdown(point, bits, order, finite, archimedean)


def canonical_height(
    model: WeierstrassModel,
    point: RationalPoint,
    bits: int,
    opts: Optional[PsiFiniteOptions] = None,
    method: Optional[ArchimedeanMethod] = None,
) -> HeightBreakdown:
    """
    Canonical height of a rational point to absolute error 2^-bits.

    Args:
        model: Integral Weierstrass model, not necessarily minimal
        point: Point on ``model``
        bits: Requested absolute precision
        opts: Refinements for the Ψ^f computation
        method: Archimedean method (AGM unless told otherwise)

    Returns:
        HeightBreakdown; torsion points get an exact zero

    Raises:
        PointNotOnCurveError: If the point does not lie on the model
    """
    require_on_curve(model, point)
    return _assemble(
        model, point, bits, opts or PsiFiniteOptions(), method or get_archimedean_method("agm")
    )


def canonical_height_limit_oracle(
    model: WeierstrassModel, point: RationalPoint, doublings: int, bits: int
) -> BigReal:
    """h(2^n P) / 4^n from exact primitive Kummer duplication.

    Coordinates grow fourfold per doubling, so n is capped at 12.
    """
    if not 0 <= doublings <= 12:
        raise ValueError("the limit oracle supports 0 <= doublings <= 12")
    pair = kummer_primitive(point)
    for _ in range(doublings):
        pair, _ = duplicate_primitive(pair, model)
    value = log_of_int(pair.height_bound, bits + 2 * doublings)
    return value.shift(-2 * doublings)


def local_height_nonarch(
    model: WeierstrassModel, point: RationalPoint, p: int, bits: int
) -> BigReal:
    """λ̂_p(P) = log max(1, |x(P)|_p) - μ_p(P) log p.

    Args:
        model: Integral model
        point: Affine point
        p: A prime
        bits: Absolute precision

    Returns:
        The p-adic local height
    """
    if point.is_infinity:
        raise ValueError("local heights are not defined at O")
    x = point.x
    v = valuation(x.numerator, p) - valuation(x.denominator, p) if x.numerator else 0
    coefficient = Fraction(max(0, -v)) - mu_at(point, model, p).mu
    if coefficient == 0:
        return BigReal.zero(bits + GUARD_BITS)
    return log_of_int(p, bits + 4) * BigReal.from_fraction(coefficient, bits + GUARD_BITS)


def local_height_archimedean(
    model: WeierstrassModel,
    point: RationalPoint,
    bits: int,
    method: Optional[ArchimedeanMethod] = None,
) -> BigReal:
    """λ̂∞(P) = log max(1, |x(P)|) - Ψ∞(P); needs 2P != O."""
    return (method or get_archimedean_method("agm")).local_height(model, point, bits)


def silverman_normalized(
    value: BigReal, model: Optional[WeierstrassModel] = None, bits: int = 64
) -> BigReal:
    """Convert to the normalization of Silverman's textbook.

    Without a model the value is read as a global height and halved; with a
    model it is a local height and (λ̂ - log|Δ| / 6) / 2 is returned.
    """
    if model is None:
        return value.shift(-1)
    shift = log_of_int(abs(model.delta), bits + 4) / 6
    return (value - shift).shift(-1)


def height_pairing(
    model: WeierstrassModel,
    p: RationalPoint,
    q: RationalPoint,
    bits: int,
    opts: Optional[PsiFiniteOptions] = None,
    method: Optional[ArchimedeanMethod] = None,
) -> BigReal:
    """<P, Q> = (ĥ(P + Q) - ĥ(P) - ĥ(Q)) / 2."""
    require_on_curve(model, p)
    require_on_curve(model, q)
    work = bits + 2
    heights = [
        canonical_height(model, r, work, opts, method).h_canonical
        for r in (add_points(model, p, q), p, q)
    ]
    return (heights[0] - heights[1] - heights[2]).shift(-1)
