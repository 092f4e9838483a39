"""Rational reconstruction: simplest fractions and continued-fraction convergents."""

from fractions import Fraction
from math import ceil, floor
from typing import Iterator, List

from ..exceptions import NoFractionFoundError


def _simplest_positive(lo: Fraction, hi: Fraction) -> Fraction:
    # 0 < lo <= hi; descend the Stern-Brocot tree one partial quotient at a time
    quotients: List[int] = []
    while True:
        c = ceil(lo)
        if c <= hi:
            tail = Fraction(c)
            break
        n = floor(lo)
        quotients.append(n)
        lo, hi = 1 / (hi - n), 1 / (lo - n)
    for n in reversed(quotients):
        tail = n + 1 / tail
    return tail


def simplest_fraction_in_interval(lo: Fraction, hi: Fraction) -> Fraction:
    """The fraction of smallest denominator in [lo, hi].

    Ties between integers go to the one of smallest absolute value.

    Args:
        lo: Lower end of the closed interval
        hi: Upper end, at least lo

    Returns:
        The simplest fraction in the interval
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise ValueError(f"empty interval [{lo}, {hi}]")
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -_simplest_positive(-hi, -lo)
    return _simplest_positive(lo, hi)


def unique_fraction_in_interval(lo: Fraction, bound: int) -> Fraction:
    """The unique fraction with denominator <= bound in [lo, lo + 1/bound^2].

    Raises:
        NoFractionFoundError: If the interval holds no such fraction
    """
    lo = Fraction(lo)
    result = simplest_fraction_in_interval(lo, lo + Fraction(1, bound * bound))
    if result.denominator > bound:
        raise NoFractionFoundError(
            f"no fraction with denominator <= {bound} in [{lo}, {lo} + 1/{bound}^2]"
        )
    return result


def continued_fraction(x: Fraction) -> Iterator[int]:
    """Partial quotients of a rational number."""
    x = Fraction(x)
    num, den = x.numerator, x.denominator
    while den:
        q = num // den
        yield q
        num, den = den, num - q * den


def convergents(x: Fraction) -> Iterator[Fraction]:
    """Successive convergents of a rational number, ending with x itself."""
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    for a in continued_fraction(x):
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        yield Fraction(p, q)


def first_admissible_convergent(a: Fraction, bound: int) -> Fraction:
    """First convergent r/s of a with a <= r/s <= a + 1/(2*s*bound^2).

    The last convergent is a itself, so this always succeeds.
    """
    a = Fraction(a)
    for c in convergents(a):
        if a <= c <= a + Fraction(1, 2 * c.denominator * bound * bound):
            return c
    return a
