"""Local error functions ε_p and μ_p at a single prime p.

μ_p(P) = Σ 4^{-n-1} ε_p(2^n P) is found from finitely many p-adic doublings:
the first m + 1 terms pin μ_p down to an interval of length 1/B^2 with
B = v_p(Δ), and μ_p has denominator at most B.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from ..arith.integers import valuation
from ..arith.rationals import unique_fraction_in_interval
from ..exceptions import PrecisionExhaustedError
from ..model.kummer import KummerPair, delta_polynomials, duplicate_kummer, kummer_primitive
from ..model.points import RationalPoint
from ..model.weierstrass import WeierstrassModel

logger = logging.getLogger(__name__)


def doubling_cutoff(bound: int, power: int, factor: int = 1) -> int:
    """Largest m >= 0 with 3 * 4^m <= factor * bound^power."""
    target = factor * bound ** power
    m = 0
    while 3 * 4 ** (m + 1) <= target:
        m += 1
    return m


@dataclass(frozen=True)
class PadicKummerPair:
    """Residues (x1, x2) of a primitive Kummer pair known modulo p^k."""

    p: int
    k: int
    x1: int
    x2: int

    @classmethod
    def from_pair(cls, pair: KummerPair, p: int, k: int) -> "PadicKummerPair":
        modulus = p ** k
        return cls(p, k, pair.x1 % modulus, pair.x2 % modulus)

    def duplicate(self, model: WeierstrassModel) -> Tuple[int, "PadicKummerPair"]:
        """Double, strip the common power p^l and return (l, reduced pair).

        The reduced pair is known modulo p^(k - l).
        """
        modulus = self.p ** self.k
        d1, d2 = delta_polynomials(self.x1, self.x2, model)
        d1, d2 = d1 % modulus, d2 % modulus
        ell = min(valuation(d1, self.p, cap=self.k), valuation(d2, self.p, cap=self.k))
        if ell >= self.k:
            raise PrecisionExhaustedError(
                f"both residues vanish modulo {self.p}^{self.k}"
            )
        scale = self.p ** ell
        k = self.k - ell
        reduced = self.p ** k
        return ell, PadicKummerPair(self.p, k, (d1 // scale) % reduced, (d2 // scale) % reduced)


@dataclass(frozen=True)
class LocalMu:
    """ε_p(P) and μ_p(P) at one prime."""

    epsilon0: int
    mu: Fraction


def epsilon_at(point: RationalPoint, model: WeierstrassModel, p: int) -> int:
    """ε_p(P) = min(v_p(δ1), v_p(δ2)) on primitive integral Kummer coordinates."""
    doubled = duplicate_kummer(kummer_primitive(point), model)
    return _epsilon_of(doubled, p)


def _epsilon_of(doubled: KummerPair, p: int) -> int:
    values = [valuation(d, p) for d in (doubled.x1, doubled.x2) if d != 0]
    return min(values)


def mu_at(point: RationalPoint, model: WeierstrassModel, p: int) -> LocalMu:
    """μ_p(P) by truncated p-adic doubling.

    Works for any integral model, minimal or not.

    Args:
        point: Rational point on ``model``
        model: Integral Weierstrass model
        p: A prime (not checked)

    Returns:
        LocalMu with ε_p(P) and the exact rational μ_p(P)
    """
    bound = valuation(model.delta, p)
    if bound <= 1:
        return LocalMu(0, Fraction(0))
    m = doubling_cutoff(bound, 3)
    k = (m + 1) * bound + 1
    current = PadicKummerPair.from_pair(kummer_primitive(point), p, k)
    logger.debug(f"mu_at p={p}: B={bound}, m={m}, working modulo p^{k}")

    mu0 = Fraction(0)
    epsilon0 = 0
    for n in range(m + 1):
        ell, current = current.duplicate(model)
        if n == 0:
            epsilon0 = ell
        if ell == 0:
            return LocalMu(epsilon0, mu0)
        mu0 += Fraction(ell, 4 ** (n + 1))
    return LocalMu(epsilon0, unique_fraction_in_interval(mu0, bound))


def epsilon_sequence(point: RationalPoint, model: WeierstrassModel, p: int, terms: int):
    """ε_p(2^n P) for n < terms by exact primitive duplication."""
    pair = kummer_primitive(point)
    result = []
    for _ in range(terms):
        doubled = duplicate_kummer(pair, model)
        result.append(_epsilon_of(doubled, p))
        pair = doubled.primitive()
    return result


def mu_oracle(point: RationalPoint, model: WeierstrassModel, p: int, terms: int) -> Fraction:
    """Reference μ_p(P) from the defining series, with exact arithmetic throughout.

    Raises:
        ValueError: If ``terms`` is below the cutoff m + 1
    """
    bound = valuation(model.delta, p)
    if bound <= 1:
        return Fraction(0)
    m = doubling_cutoff(bound, 3)
    if terms < m + 1:
        raise ValueError(f"mu_oracle needs at least {m + 1} terms at p={p}, got {terms}")
    partial = sum(
        (Fraction(eps, 4 ** (n + 1)) for n, eps in enumerate(epsilon_sequence(point, model, p, terms))),
        Fraction(0),
    )
    return unique_fraction_in_interval(partial, bound)
