"""Ψ∞ straight from its defining series, for cross-checking the AGM path.

Ψ∞(P) = -Σ_n 4^{-n-1} log Φ(2^n P) with
Φ(x1, x2) = max(|δ1|, |δ2|) / max(|x1|, |x2|)^4.  Convergence is linear, so
this is only used as a reference value in tests and from the CLI.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List

from ...arith.bigreal import BigReal, log_of_fraction
from ...exceptions import TorsionOrbitError
from ...model.kummer import delta_polynomials, kummer_primitive
from ...model.points import RationalPoint, torsion_order
from ...model.weierstrass import WeierstrassModel

logger = logging.getLogger(__name__)

# exact Kummer pairs are kept while their entries stay below this many bits
EXACT_PAIR_BITS = 2048


@dataclass(frozen=True)
class SeriesResult:
    """A truncated series value with the bound on the neglected tail."""

    value: BigReal
    terms: int
    sup_log_phi: float

    @property
    def tail_bound(self) -> float:
        """Σ_{n >= terms} 4^{-n-1} C = C 4^{-terms} / 3 with C the sup of |log Φ|."""
        return self.sup_log_phi * 4.0 ** (-self.terms) / 3


def _solve_exact(rows: List[List[Fraction]]) -> List[Fraction]:
    """Gauss-Jordan on an invertible augmented system."""
    n = len(rows)
    for col in range(n):
        pivot = next(r for r in range(col, n) if rows[r][col] != 0)
        rows[col], rows[pivot] = rows[pivot], rows[col]
        lead = rows[col][col]
        rows[col] = [v / lead for v in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return [row[n] for row in rows]


def _bezout_norm(model: WeierstrassModel, target: int) -> Fraction:
    """Sum of |coefficients| of the cubic forms A, B with A δ1 + B δ2 = x^(7-target) z^target.

    δ1 and δ2 have no common zero on the projective line when Δ != 0, so the
    8 x 8 system for the coefficients of A and B is invertible.
    """
    d1 = [1, 0, -model.b4, -2 * model.b6, -model.b8]
    d2 = [0, 4, model.b2, 2 * model.b4, model.b6]
    rows = []
    for j in range(8):
        row = [Fraction(d[j - i]) if 0 <= j - i <= 4 else Fraction(0) for d in (d1, d2) for i in range(4)]
        row.append(Fraction(int(j == target)))
        rows.append(row)
    return sum((abs(v) for v in _solve_exact(rows)), Fraction(0))


def log_phi_bound(model: WeierstrassModel) -> float:
    """C with |log Φ(x1, x2)| <= C for every real (x1, x2) != (0, 0).

    Above, each δ_i is at most its coefficient sum times max(|x1|, |x2|)^4.
    Below, A δ1 + B δ2 = x1^7 (or x2^7) gives max(|δ1|, |δ2|) >= max(|x1|, |x2|)^4 / N
    with N the larger of the two Bezout norms.
    """
    upper = max(
        1 + abs(model.b4) + 2 * abs(model.b6) + abs(model.b8),
        4 + abs(model.b2) + 2 * abs(model.b4) + abs(model.b6),
    )
    lower_inverse = max(_bezout_norm(model, 0), _bezout_norm(model, 7))
    bound = max(Fraction(upper), lower_inverse, Fraction(1))
    # round up past the 32-bit log
    return float(log_of_fraction(bound, 32)) + 2.0 ** -20


def _check_orbit(model: WeierstrassModel, point: RationalPoint, terms: int) -> None:
    order = 1 if point.is_infinity else torsion_order(model, point)
    if order is not None and order & (order - 1) == 0 and order.bit_length() - 1 < terms:
        raise TorsionOrbitError(f"2^n P = O for n = {order.bit_length() - 1} < {terms}")


def psi_infinity_series(
    model: WeierstrassModel, point: RationalPoint, terms: int, bits: int
) -> SeriesResult:
    """Sum the first ``terms`` terms of the defining series of Ψ∞(P).

    Args:
        model: Integral model
        point: Point whose doubling orbit avoids O for ``terms`` steps
        terms: Number of series terms, at least one
        bits: Rounding accuracy of the partial sum

    Returns:
        SeriesResult with the partial sum and its tail bound

    Raises:
        TorsionOrbitError: If 2^n P = O for some n < terms
    """
    if terms < 1:
        raise ValueError("the series needs at least one term")
    _check_orbit(model, point, terms)
    prec = bits + terms * (model.size_bits + 2) + 64
    pair = kummer_primitive(point)
    x1, x2 = pair.x1, pair.x2
    exact = True
    total = BigReal.zero(prec)
    for n in range(terms):
        if exact:
            d1, d2 = delta_polynomials(x1, x2, model)
            log_phi = log_of_fraction(
                Fraction(max(abs(d1), abs(d2)), max(abs(x1), abs(x2)) ** 4), prec
            )
            g = gcd(d1, d2)
            x1, x2 = d1 // g, d2 // g
            if max(abs(x1), abs(x2)).bit_length() > EXACT_PAIR_BITS:
                exact = False
                scale = BigReal.from_int(max(abs(x1), abs(x2)), prec)
                x1, x2 = BigReal.from_int(x1, prec) / scale, BigReal.from_int(x2, prec) / scale
        else:
            d1, d2 = delta_polynomials(x1, x2, model)
            top = abs(d1) if abs(d1) >= abs(d2) else abs(d2)
            size = abs(x1) if abs(x1) >= abs(x2) else abs(x2)
            log_phi = (top / (size * size * size * size)).log()
            x1, x2 = d1 / top, d2 / top
        total = total - log_phi.shift(-2 * (n + 1))
    sup = log_phi_bound(model)
    logger.debug(f"Series oracle: {terms} terms at {prec} bits, sup |log Phi| <= {sup:.3f}")
    return SeriesResult(total, terms, sup)


def psi_infinity_oracle_series(
    model: WeierstrassModel, point: RationalPoint, terms: int, bits: int
) -> BigReal:
    """Partial sum of the defining series of Ψ∞(P); see :func:`psi_infinity_series`."""
    return psi_infinity_series(model, point, terms, bits).value
