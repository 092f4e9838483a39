"""Factorization-free total finite contribution Ψ^f(P) = Σ_p μ_p(P) log p.

The gcd's g_n of the doubled primitive Kummer pairs of 2^n P satisfy
Ψ^f(P) = Σ_n 4^{-n-1} log g_n.  Their first m + 1 values, split over a
pairwise coprime basis, determine Ψ^f exactly as a rational combination of
logarithms of the basis elements.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Tuple

from ..arith.bigreal import BigReal, log_of_int
from ..arith.integers import (
    coprime_basis,
    gcd_power,
    integer_log_floor,
    primes_below,
    refine_basis,
    valuation,
)
from ..arith.rationals import first_admissible_convergent, simplest_fraction_in_interval
from ..model.kummer import delta_polynomials, duplicate_primitive, kummer_primitive
from ..model.points import RationalPoint
from ..model.weierstrass import WeierstrassModel
from .nonarch_local import doubling_cutoff, mu_at

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PsiFiniteOptions:
    """Switches for the practical refinements of the Ψ^f computation.

    All combinations give the same value of Ψ^f.
    """

    trial_division_bound: int = 1
    use_2b4_variant: bool = False
    incremental_basis: bool = False
    shrinking_modulus: bool = False

    def __post_init__(self) -> None:
        if self.trial_division_bound < 1:
            raise ValueError("trial_division_bound must be >= 1")


@dataclass(frozen=True)
class FormalLogSum:
    """Σ μ_i log q_i over pairwise coprime q_i >= 2 with rational μ_i > 0."""

    terms: Tuple[Tuple[int, Fraction], ...] = ()

    def __post_init__(self) -> None:
        qs = [q for q, _ in self.terms]
        for i, q in enumerate(qs):
            if q < 2:
                raise ValueError(f"log base {q} < 2 in a formal log sum")
            for r in qs[i + 1:]:
                if gcd(q, r) != 1:
                    raise ValueError(f"bases {q} and {r} are not coprime")

    @property
    def is_empty(self) -> bool:
        return not self.terms

    def as_dict(self) -> Dict[int, Fraction]:
        return dict(self.terms)

    def evaluate(self, bits: int) -> BigReal:
        return eval_log_sum(self, bits)

    def __str__(self) -> str:
        if self.is_empty:
            return "0"
        return " + ".join(f"{mu}*log({q})" for q, mu in self.terms)


@dataclass(frozen=True)
class GcdSequence:
    """The gcd's g_0..g_m restricted to the primes of ``divisor``."""

    divisor: int
    bound: int
    cutoff: int
    values: Tuple[int, ...]
    small_terms: Tuple[Tuple[int, Fraction], ...] = ()
    incremental: bool = False


def eval_log_sum(total: FormalLogSum, bits: int) -> BigReal:
    """Σ μ_i log q_i with absolute error at most 2^-bits."""
    weight = sum((abs(mu) * q.bit_length() for q, mu in total.terms), Fraction(0))
    prec = bits + (1 + int(weight)).bit_length() + 16
    value = BigReal.zero(prec)
    for q, mu in total.terms:
        value = value + log_of_int(q, prec) * BigReal.from_fraction(mu, prec)
    return value


def _bound_for(divisor: int, opts: PsiFiniteOptions) -> int:
    if divisor <= 1:
        return 0
    if opts.trial_division_bound > 1:
        return integer_log_floor(divisor, opts.trial_division_bound)
    return divisor.bit_length() - 1


def _cutoff_for(bound: int, opts: PsiFiniteOptions) -> int:
    if opts.use_2b4_variant:
        return doubling_cutoff(bound, 4, factor=2)
    return doubling_cutoff(bound, 5)


def _reconstruct(a: Fraction, bound: int, opts: PsiFiniteOptions) -> Fraction:
    if opts.use_2b4_variant:
        return first_admissible_convergent(a, bound)
    return simplest_fraction_in_interval(a, a + Fraction(1, bound ** 4))


def _split_small_primes(
    point: RationalPoint, model: WeierstrassModel, divisor: int, opts: PsiFiniteOptions
) -> Tuple[int, List[Tuple[int, Fraction]]]:
    """Strip primes below the trial-division bound from D, computing their μ_p directly."""
    small: List[Tuple[int, Fraction]] = []
    for p in primes_below(opts.trial_division_bound):
        if divisor % p:
            continue
        divisor //= p ** valuation(divisor, p)
        local = mu_at(point, model, p)
        if local.mu:
            small.append((p, local.mu))
    return divisor, small


def finite_gcd_sequence(
    point: RationalPoint, model: WeierstrassModel, opts: Optional[PsiFiniteOptions] = None
) -> GcdSequence:
    """Run the truncated doubling loop and collect g_0, ..., g_m.

    Args:
        point: Rational point on ``model`` (O allowed)
        model: Integral Weierstrass model
        opts: Refinement switches

    Returns:
        GcdSequence; ``values`` is empty when Ψ^f vanishes outside trial-divided primes
    """
    opts = opts or PsiFiniteOptions()
    if point.is_infinity:
        return GcdSequence(1, 0, 0, ())
    pair, g0 = duplicate_primitive(kummer_primitive(point), model)
    if g0 == 1:
        return GcdSequence(1, 0, 0, ())

    divisor = gcd_power(abs(model.delta), g0)
    small: List[Tuple[int, Fraction]] = []
    if opts.trial_division_bound > 1:
        divisor, small = _split_small_primes(point, model, divisor, opts)
        g0 = gcd_power(g0, divisor) if divisor > 1 else 1
    bound = _bound_for(divisor, opts)
    if bound <= 1:
        return GcdSequence(divisor, bound, 0, (), tuple(small))

    if opts.incremental_basis:
        return _incremental_sequence(pair, g0, model, divisor, bound, small, opts)

    m = _cutoff_for(bound, opts)
    logger.debug(
        f"Psi^f loop: D has {divisor.bit_length()} bits, B={bound}, m={m}"
    )
    modulus = divisor ** (m + 1) * g0
    x1, x2 = pair.x1 % modulus, pair.x2 % modulus
    values = [g0]
    for n in range(1, m + 1):
        if opts.shrinking_modulus:
            modulus = divisor ** (m + 1 - n) * g0
        d1, d2 = delta_polynomials(x1, x2, model)
        d1, d2 = d1 % modulus, d2 % modulus
        g = gcd(divisor, gcd(d1, d2))
        values.append(g)
        x1, x2 = d1 // g, d2 // g
    return GcdSequence(divisor, bound, m, tuple(values), tuple(small))


def _element_data(q: int, divisor: int, opts: PsiFiniteOptions) -> Tuple[int, int, int]:
    d_q = gcd_power(divisor, q)
    b_q = _bound_for(d_q, opts)
    return d_q, b_q, _cutoff_for(b_q, opts) if b_q > 1 else 0


def _incremental_sequence(pair, g0, model, divisor, bound, small, opts) -> GcdSequence:
    """Doubling loop that refines the basis after every pass.

    Each basis element q carries its own D_q = gcd(D, q^inf), B_q and m_q, and
    the residues are kept modulo prod D_q^(m_q + 1) * g_0.
    """
    basis = refine_basis([], g0)
    values = [g0]
    x1, x2 = pair.x1, pair.x2
    n = 0
    while True:
        data = {q: _element_data(q, divisor, opts) for q in basis}
        cutoff = max(m_q for _, _, m_q in data.values())
        if n >= cutoff:
            break
        modulus = g0
        for d_q, _, m_q in data.values():
            modulus *= d_q ** (m_q + 1)
        n += 1
        d1, d2 = delta_polynomials(x1 % modulus, x2 % modulus, model)
        d1, d2 = d1 % modulus, d2 % modulus
        g = gcd(divisor, gcd(d1, d2))
        values.append(g)
        basis = refine_basis(basis, g)
        x1, x2 = d1 // g, d2 // g
    logger.debug(f"Incremental Psi^f loop ran {n} passes over {len(basis)} basis elements")
    return GcdSequence(divisor, bound, n, tuple(values), tuple(small), incremental=True)


def psi_finite(
    point: RationalPoint, model: WeierstrassModel, opts: Optional[PsiFiniteOptions] = None
) -> FormalLogSum:
    """Ψ^f(P) as an exact formal sum Σ μ_i log q_i, without factoring Δ.

    Args:
        point: Rational point on ``model`` (O gives the empty sum)
        model: Integral Weierstrass model, not necessarily minimal
        opts: Refinement switches; every combination gives the same value

    Returns:
        FormalLogSum with pairwise coprime bases and nonzero coefficients
    """
    opts = opts or PsiFiniteOptions()
    sequence = finite_gcd_sequence(point, model, opts)
    terms = list(sequence.small_terms)
    if sequence.values:
        basis = coprime_basis(sequence.values)
        for q, exps in zip(basis.bases, basis.exponents):
            if sequence.incremental:
                _, b_q, m_q = _element_data(q, sequence.divisor, opts)
            else:
                b_q, m_q = sequence.bound, sequence.cutoff
            if b_q <= 1:
                continue
            a = sum(
                (Fraction(e, 4 ** (n + 1)) for n, e in enumerate(exps[: m_q + 1])),
                Fraction(0),
            )
            mu = _reconstruct(a, b_q, opts)
            if mu:
                terms.append((q, mu))
    terms.sort()
    result = FormalLogSum(tuple(terms))
    logger.debug(f"Psi^f = {result}")
    return result
