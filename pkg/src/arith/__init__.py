from .bigreal import BigReal, bits_for_digits, log1m_series, log_of_fraction, log_of_int
from .integers import (
    CoprimeBasis,
    coprime_basis,
    gcd_power,
    integer_log_floor,
    primes_below,
    refine_basis,
    valuation,
)
from .rationals import (
    convergents,
    first_admissible_convergent,
    simplest_fraction_in_interval,
    unique_fraction_in_interval,
)

__all__ = [
    "BigReal",
    "CoprimeBasis",
    "bits_for_digits",
    "convergents",
    "coprime_basis",
    "first_admissible_convergent",
    "gcd_power",
    "integer_log_floor",
    "log1m_series",
    "log_of_fraction",
    "log_of_int",
    "primes_below",
    "refine_basis",
    "simplest_fraction_in_interval",
    "unique_fraction_in_interval",
    "valuation",
]
