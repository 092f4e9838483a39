"""Fixed-precision binary reals on top of mpmath's raw ``mpf`` layer.

A :class:`BigReal` carries its own working precision in bits.  Every
operation rounds to nearest at the larger precision of its operands, so the
error of a single operation is at most half a unit in the last place.  The
raw ``mpmath.libmp`` functions are used instead of the global ``mp`` context
so that values stay immutable and computations are safe to run from several
threads at once.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from mpmath import libmp
from mpmath.libmp import (
    fone,
    fzero,
    from_int,
    from_man_exp,
    from_rational,
    mpf_abs,
    mpf_add,
    mpf_cmp,
    mpf_div,
    mpf_log,
    mpf_mul,
    mpf_neg,
    mpf_pos,
    mpf_shift,
    mpf_sign,
    mpf_sqrt,
    mpf_sub,
    round_nearest,
    to_float,
    to_int,
    to_rational,
    to_str,
)

RawMpf = Tuple[int, int, int, int]
Operand = Union["BigReal", int, Fraction]

LOG10_2 = 0.30102999566398120


def bits_for_digits(digits: int) -> int:
    """Number of bits carrying ``digits`` correct decimal places (plus slack)."""
    return int(digits / LOG10_2) + 4


@dataclass(frozen=True)
class BigReal:
    """An arbitrary-precision real number with an explicit precision in bits."""

    raw: RawMpf
    prec: int

    # -- construction -------------------------------------------------------

    @classmethod
    def from_int(cls, value: int, prec: int) -> "BigReal":
        return cls(from_int(value, prec, round_nearest), prec)

    @classmethod
    def from_fraction(cls, value: Fraction, prec: int) -> "BigReal":
        value = Fraction(value)
        return cls(
            from_rational(value.numerator, value.denominator, prec, round_nearest),
            prec,
        )

    @classmethod
    def from_dyadic(cls, n: int, k: int, prec: int) -> "BigReal":
        """The value n / 2**k rounded to ``prec`` bits."""
        return cls(from_man_exp(n, -k, prec, round_nearest), prec)

    @classmethod
    def zero(cls, prec: int) -> "BigReal":
        return cls(fzero, prec)

    @classmethod
    def one(cls, prec: int) -> "BigReal":
        return cls(fone, prec)

    @classmethod
    def coerce(cls, value: Operand, prec: int) -> "BigReal":
        """Turn an int, Fraction or BigReal into a BigReal of at least ``prec`` bits."""
        if isinstance(value, BigReal):
            return value
        if isinstance(value, int):
            return cls.from_int(value, prec)
        return cls.from_fraction(value, prec)

    def with_prec(self, prec: int) -> "BigReal":
        """Round (or widen) to a new working precision."""
        if prec == self.prec:
            return self
        return BigReal(mpf_pos(self.raw, prec, round_nearest), prec)

    # -- arithmetic ---------------------------------------------------------

    def _binary(self, other: Operand, op) -> "BigReal":
        other = BigReal.coerce(other, self.prec)
        prec = max(self.prec, other.prec)
        return BigReal(op(self.raw, other.raw, prec, round_nearest), prec)

    def __add__(self, other: Operand) -> "BigReal":
        return self._binary(other, mpf_add)

    def __radd__(self, other: Operand) -> "BigReal":
        return self._binary(other, mpf_add)

    def __sub__(self, other: Operand) -> "BigReal":
        return self._binary(other, mpf_sub)

    def __rsub__(self, other: Operand) -> "BigReal":
        return BigReal.coerce(other, self.prec)._binary(self, mpf_sub)

    def __mul__(self, other: Operand) -> "BigReal":
        return self._binary(other, mpf_mul)

    def __rmul__(self, other: Operand) -> "BigReal":
        return self._binary(other, mpf_mul)

    def __truediv__(self, other: Operand) -> "BigReal":
        other = BigReal.coerce(other, self.prec)
        if other.is_zero():
            raise ZeroDivisionError("BigReal division by zero")
        return self._binary(other, mpf_div)

    def __rtruediv__(self, other: Operand) -> "BigReal":
        return BigReal.coerce(other, self.prec) / self

    def __neg__(self) -> "BigReal":
        return BigReal(mpf_neg(self.raw), self.prec)

    def __abs__(self) -> "BigReal":
        return BigReal(mpf_abs(self.raw), self.prec)

    def shift(self, n: int) -> "BigReal":
        """Multiply by 2**n exactly."""
        return BigReal(mpf_shift(self.raw, n), self.prec)

    def sqrt(self) -> "BigReal":
        if self.sign() < 0:
            raise ValueError("square root of a negative BigReal")
        return BigReal(mpf_sqrt(self.raw, self.prec, round_nearest), self.prec)

    def log(self) -> "BigReal":
        """Natural logarithm; mpmath switches to an AGM-based method at high precision."""
        if self.sign() <= 0:
            raise ValueError("logarithm of a non-positive BigReal")
        return BigReal(mpf_log(self.raw, self.prec, round_nearest), self.prec)

    # -- comparison ---------------------------------------------------------

    def sign(self) -> int:
        return mpf_sign(self.raw)

    def is_zero(self) -> bool:
        return self.raw == fzero

    def _cmp(self, other: Operand) -> int:
        return mpf_cmp(self.raw, BigReal.coerce(other, self.prec).raw)

    def __lt__(self, other: Operand) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: Operand) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: Operand) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: Operand) -> bool:
        return self._cmp(other) >= 0

    @property
    def mag(self) -> int:
        """An integer e with |self| < 2**e (very negative for zero)."""
        sign, man, exp, bc = self.raw
        if not man:
            return -(1 << 62)
        return exp + bc

    # -- conversion ---------------------------------------------------------

    def to_fraction(self) -> Fraction:
        """The exact dyadic rational represented by this value."""
        p, q = to_rational(self.raw)
        return Fraction(p, q)

    def to_dyadic(self) -> Tuple[int, int]:
        """Return ``(n, k)`` with value == n / 2**k and k >= 0."""
        sign, man, exp, bc = self.raw
        n = -man if sign else man
        if exp >= 0:
            return n << exp, 0
        return n, -exp

    def to_fixed_decimal(self, digits: int) -> str:
        """Format with exactly ``digits`` decimals, rounded to nearest."""
        scaled = mpf_mul(self.raw, from_int(10 ** digits))
        n = to_int(scaled, round_nearest)
        sign = "-" if n < 0 else ""
        text = str(abs(n)).rjust(digits + 1, "0")
        if digits == 0:
            return sign + text
        return f"{sign}{text[:-digits]}.{text[-digits:]}"

    def __float__(self) -> float:
        return to_float(self.raw)

    def __str__(self) -> str:
        return to_str(self.raw, libmp.prec_to_dps(self.prec))

    def __repr__(self) -> str:
        return f"BigReal({str(self)}, prec={self.prec})"


def log_of_int(n: int, bits: int) -> BigReal:
    """log(n) for a positive integer with absolute error about 2**-bits."""
    if n <= 0:
        raise ValueError("logarithm of a non-positive integer")
    if n == 1:
        return BigReal.zero(bits + 8)
    prec = bits + max(n.bit_length().bit_length(), 1) + 8
    return BigReal.from_int(n, prec).log()


def log_of_fraction(value: Fraction, bits: int) -> BigReal:
    """log(value) for a positive rational with absolute error about 2**-bits."""
    value = Fraction(value)
    if value <= 0:
        raise ValueError("logarithm of a non-positive rational")
    return log_of_int(value.numerator, bits + 1) - log_of_int(value.denominator, bits + 1)


def log1m_series(s: BigReal) -> BigReal:
    """log(1 - s) for tiny s via log r = 2*sum z**(2k+1)/(2k+1), z = (r-1)/(r+1).

    Converges like |z|**2 per term, so it only pays off when s is far below
    one; callers switch to :meth:`BigReal.log` otherwise.
    """
    prec = s.prec
    z = -s / (2 - s)
    z2 = z * z
    power = z
    total = BigReal.zero(prec)
    k = 0
    limit = -prec - 4
    while True:
        term = power / (2 * k + 1)
        total = total + term
        if term.is_zero() or term.mag < limit:
            break
        power = power * z2
        k += 1
    return total.shift(1)
