"""Exact integer helpers: gcd with a power, gcd-free bases, valuations.

Nothing in here factors an integer.  Prime-by-prime information is only
ever obtained for primes handed in by the caller.
"""

import logging
from dataclasses import dataclass
from math import gcd
from typing import Dict, Iterable, List, Sequence, Tuple

logger = logging.getLogger(__name__)


def gcd_power(a: int, b: int) -> int:
    """Largest divisor of ``a`` whose prime factors all divide ``b``.

    This is gcd(a, b^inf), obtained by repeatedly stripping gcd's.

    Args:
        a: Positive integer
        b: Positive integer

    Returns:
        The b-smooth part of a
    """
    if a <= 0 or b <= 0:
        raise ValueError("gcd_power expects positive integers")
    result = 1
    g = gcd(a, b)
    while g > 1:
        result *= g
        a //= g
        g = gcd(a, g)
    return result


def valuation(n: int, p: int, cap: int = -1) -> int:
    """p-adic valuation of a nonzero integer.

    With ``cap >= 0`` zero is accepted and reported as ``cap`` (the "at least
    cap" reading used for residues modulo p^cap).
    """
    if n == 0:
        if cap >= 0:
            return cap
        raise ValueError("valuation of zero")
    n = abs(n)
    v = 0
    # strip p^(2^j) blocks first so huge valuations cost O(log v) divisions
    powers = [p]
    while n % (powers[-1] * powers[-1]) == 0:
        powers.append(powers[-1] * powers[-1])
    for j in range(len(powers) - 1, -1, -1):
        q, r = divmod(n, powers[j])
        if r == 0:
            n = q
            v += 1 << j
    while n % p == 0:
        n //= p
        v += 1
    if cap >= 0:
        return min(v, cap)
    return v


def integer_log_floor(n: int, base: int) -> int:
    """Largest B with base**B <= n (n >= 1, base >= 2), computed exactly."""
    if n < 1 or base < 2:
        raise ValueError("integer_log_floor expects n >= 1 and base >= 2")
    b = max((n.bit_length() - 1) // base.bit_length(), 0)
    power = base ** b
    while power * base <= n:
        power *= base
        b += 1
    while power > n:
        power //= base
        b -= 1
    return b


def refine_basis(basis: List[int], value: int) -> List[int]:
    """Insert ``value`` into a pairwise coprime list, splitting shared factors.

    Every element previously in ``basis`` and ``value`` itself remain products
    of powers of the returned elements.
    """
    basis = list(basis)
    pending = [value]
    while pending:
        x = pending.pop()
        if x == 1:
            continue
        for i, q in enumerate(basis):
            g = gcd(x, q)
            if g > 1:
                basis.pop(i)
                pending.extend((q // g, x // g, g))
                break
        else:
            basis.append(x)
    return basis


def exponents_in_basis(value: int, basis: Sequence[int]) -> Tuple[int, ...]:
    """Exponent vector of ``value`` over a pairwise coprime basis.

    Raises:
        ValueError: If value is not a product of powers of the basis
    """
    exps = []
    rest = value
    for q in basis:
        e = 0
        while rest % q == 0:
            rest //= q
            e += 1
        exps.append(e)
    if rest != 1:
        raise ValueError(f"{value} is not a product of powers of the basis")
    return tuple(exps)


@dataclass(frozen=True)
class CoprimeBasis:
    """Pairwise coprime bases with the exponent matrix of the inputs."""

    bases: Tuple[int, ...]
    exponents: Tuple[Tuple[int, ...], ...]  # exponents[i][n] of bases[i] in input n

    def reconstruct(self, n: int) -> int:
        value = 1
        for q, row in zip(self.bases, self.exponents):
            value *= q ** row[n]
        return value

    def as_dict(self) -> Dict[int, Tuple[int, ...]]:
        return dict(zip(self.bases, self.exponents))


def coprime_basis(values: Iterable[int]) -> CoprimeBasis:
    """Gcd-free basis of a list of positive integers by gcd refinement.

    Args:
        values: Integers >= 1; ones contribute nothing

    Returns:
        CoprimeBasis with the exponent of every basis element in every input
    """
    values = list(values)
    if any(v < 1 for v in values):
        raise ValueError("coprime_basis expects positive integers")
    basis: List[int] = []
    for v in values:
        basis = refine_basis(basis, v)
    basis.sort()
    columns = [exponents_in_basis(v, basis) for v in values]
    rows = tuple(tuple(col[i] for col in columns) for i in range(len(basis)))
    logger.debug(f"Coprime basis of {len(values)} values has {len(basis)} elements")
    return CoprimeBasis(bases=tuple(basis), exponents=rows)


def primes_below(bound: int) -> List[int]:
    """Primes p < bound by the sieve of Eratosthenes (used for trial division only)."""
    if bound <= 2:
        return []
    sieve = bytearray([1]) * bound
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(bound ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, bound, i)))
    return [i for i in range(bound) if sieve[i]]
