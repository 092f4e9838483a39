"""Certified real roots of the 2-division cubic f(x) = 4x^3 + b2x^2 + 2b4x + b6.

Brackets are dyadic rationals n / 2^k and every sign decision is made on
the exact integer 2^(3k) f(n / 2^k), so a returned root is always inside an
interval on whose ends f really changes sign.  Floating arithmetic is only
used to propose Newton steps.
"""

import logging
from dataclasses import dataclass
from math import isqrt
from typing import Optional, Tuple

from ...arith.bigreal import BigReal
from ...exceptions import PrecisionExhaustedError
from ...model.weierstrass import WeierstrassModel

logger = logging.getLogger(__name__)

# relative width at which bisection hands over to Newton
BISECTION_BITS = 48
MAX_VERIFY_ROUNDS = 8


@dataclass(frozen=True)
class Dyadic:
    """The rational n / 2^k, stored with n odd or k = 0."""

    n: int
    k: int = 0

    def __post_init__(self) -> None:
        n, k = self.n, self.k
        if n == 0:
            k = 0
        elif k < 0:
            n, k = n << -k, 0
        else:
            shift = min((n & -n).bit_length() - 1, k)
            n, k = n >> shift, k - shift
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)

    @classmethod
    def power_of_two(cls, e: int, sign: int = 1) -> "Dyadic":
        return cls(sign, -e)

    @classmethod
    def from_bigreal(cls, value: BigReal) -> "Dyadic":
        return cls(*value.to_dyadic())

    def _aligned(self, other: "Dyadic") -> Tuple[int, int, int]:
        k = max(self.k, other.k)
        return self.n << (k - self.k), other.n << (k - other.k), k

    def __add__(self, other: "Dyadic") -> "Dyadic":
        a, b, k = self._aligned(other)
        return Dyadic(a + b, k)

    def __sub__(self, other: "Dyadic") -> "Dyadic":
        a, b, k = self._aligned(other)
        return Dyadic(a - b, k)

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.n, self.k)

    def __abs__(self) -> "Dyadic":
        return Dyadic(abs(self.n), self.k)

    def __lt__(self, other: "Dyadic") -> bool:
        a, b, _ = self._aligned(other)
        return a < b

    def __gt__(self, other: "Dyadic") -> bool:
        return other < self

    def __le__(self, other: "Dyadic") -> bool:
        return not other < self

    def __ge__(self, other: "Dyadic") -> bool:
        return not self < other

    def midpoint(self, other: "Dyadic") -> "Dyadic":
        a, b, k = self._aligned(other)
        return Dyadic(a + b, k + 1)

    @property
    def sign(self) -> int:
        return (self.n > 0) - (self.n < 0)

    @property
    def mag(self) -> int:
        """An integer e with |self| < 2^e <= 2|self| (for nonzero values)."""
        return abs(self.n).bit_length() - self.k

    def to_bigreal(self, prec: int) -> BigReal:
        return BigReal.from_dyadic(self.n, self.k, prec)

    def __float__(self) -> float:
        return float(self.to_bigreal(64))


class RealCubic:
    """c3 x^3 + c2 x^2 + c1 x + c0 with integer coefficients and c3 > 0."""

    def __init__(self, c3: int, c2: int, c1: int, c0: int):
        if c3 <= 0:
            raise ValueError("RealCubic needs a positive leading coefficient")
        self.coefficients = (c3, c2, c1, c0)

    @classmethod
    def from_model(cls, model: WeierstrassModel) -> "RealCubic":
        return cls(4, model.b2, 2 * model.b4, model.b6)

    @property
    def coefficient_bits(self) -> int:
        return max(abs(c).bit_length() for c in self.coefficients)

    def sign_at(self, t: Dyadic) -> int:
        """Exact sign of the cubic at a dyadic point."""
        c3, c2, c1, c0 = self.coefficients
        n, k = t.n, t.k
        value = ((c3 * n + (c2 << k)) * n + (c1 << (2 * k))) * n + (c0 << (3 * k))
        return (value > 0) - (value < 0)

    def slope_sign_at(self, t: Dyadic) -> int:
        """Exact sign of the derivative at a dyadic point."""
        c3, c2, c1, _ = self.coefficients
        n, k = t.n, t.k
        value = (3 * c3 * n + ((2 * c2) << k)) * n + (c1 << (2 * k))
        return (value > 0) - (value < 0)

    def evaluate(self, x: BigReal) -> BigReal:
        c3, c2, c1, c0 = self.coefficients
        return ((c3 * x + c2) * x + c1) * x + c0

    def derivative(self, x: BigReal) -> BigReal:
        c3, c2, c1, _ = self.coefficients
        return (3 * c3 * x + 2 * c2) * x + c1

    def root_bound_exponent(self) -> int:
        """An e >= 1 with every complex root strictly inside |z| < 2^e."""
        c3, c2, c1, c0 = self.coefficients
        top = c3.bit_length()
        parts = [0]
        for degree, c in ((1, c2), (2, c1), (3, c0)):
            if c:
                parts.append(-((top - 1 - abs(c).bit_length()) // degree))
        return max(parts) + 1

    def root_gap_exponent(self) -> int:
        """An e with every real root strictly above 2^e in absolute value; needs c0 != 0."""
        c3, c2, c1, _ = self.coefficients
        return -(max(abs(c1), abs(c2), c3).bit_length() + 1)

    def upper_critical_point(self) -> Dyadic:
        """A dyadic point near the larger critical point where the cubic is negative.

        Only meaningful when the cubic has three distinct real roots.

        Raises:
            PrecisionExhaustedError: If no such point is found
        """
        c3, c2, c1, _ = self.coefficients
        disc = c2 * c2 - 3 * c3 * c1
        if disc <= 0:
            raise ValueError("cubic has no distinct critical points")
        k = 32
        limit = 4 * self.coefficient_bits + 256
        while k <= limit:
            s = isqrt(disc << (2 * k))
            t = Dyadic((s - (c2 << k)) // (3 * c3), k)
            if self.sign_at(t) < 0 and self.slope_sign_at(t) <= 0:
                return t
            k *= 2
        raise PrecisionExhaustedError("could not separate the two upper roots of the cubic")

    def refine_root(self, lo: Dyadic, hi: Dyadic, bits: int) -> BigReal:
        """The unique root in [lo, hi] with absolute error below 2^-bits.

        Args:
            lo: Left end of a bracket containing exactly one root
            hi: Right end, with a sign change between lo and hi
            bits: Absolute accuracy wanted

        Returns:
            The root as a BigReal carrying enough precision for ``bits``
        """
        bracket = _Bracket(self, lo, hi)
        if bracket.root is None:
            self._magnitude_search(bracket)
        if bracket.root is None:
            self._bisect(bracket, -bits - 1, relative=True)
        far_mag = max(abs(bracket.lo).mag, abs(bracket.hi).mag, 0)
        final_prec = bits + far_mag + self.coefficient_bits + 32
        if bracket.root is not None:
            return bracket.root.to_bigreal(final_prec)

        x = bracket.lo.midpoint(bracket.hi)
        prec = 64
        while bracket.root is None and prec < final_prec:
            prec = min(2 * prec, final_prec)
            x = self._newton_into(bracket, x, prec)

        delta = Dyadic.power_of_two(-bits - 2)
        for _ in range(MAX_VERIFY_ROUNDS):
            if bracket.root is not None:
                return bracket.root.to_bigreal(final_prec)
            for t in (x - delta, x + delta):
                if bracket.contains(t):
                    bracket.split(t)
            if bracket.root is None and (bracket.hi - bracket.lo).mag <= -bits:
                return bracket.lo.midpoint(bracket.hi).to_bigreal(final_prec)
            x = self._newton_into(bracket, x, final_prec)

        logger.warning(f"Newton did not settle on a root to {bits} bits, bisecting")
        self._bisect(bracket, -bits, relative=False)
        if bracket.root is not None:
            return bracket.root.to_bigreal(final_prec)
        return bracket.lo.midpoint(bracket.hi).to_bigreal(final_prec)

    def _magnitude_search(self, bracket: "_Bracket") -> None:
        """Shrink a bracket to within a factor of about two of the root by halving exponents."""
        if bracket.lo.sign < 0 < bracket.hi.sign:
            bracket.split(Dyadic(0))
            if bracket.root is not None:
                return
        negative = bracket.hi.sign <= 0
        near = bracket.hi if negative else bracket.lo
        far = bracket.lo if negative else bracket.hi
        e_near = abs(near).mag - 1 if near.sign else self.root_gap_exponent()
        e_far = abs(far).mag
        while e_far - e_near > 1:
            e = (e_near + e_far) // 2
            t = Dyadic.power_of_two(e, -1 if negative else 1)
            if not bracket.contains(t):
                if abs(t) <= abs(bracket.hi if negative else bracket.lo):
                    e_near = e
                else:
                    e_far = e
                continue
            bracket.split(t)
            if bracket.root is not None:
                return
            if t == (bracket.hi if negative else bracket.lo):
                e_near = e
            else:
                e_far = e

    @staticmethod
    def _bisect(bracket: "_Bracket", floor_mag: int, relative: bool) -> None:
        while bracket.root is None:
            width = (bracket.hi - bracket.lo).mag
            limit = floor_mag
            if relative:
                limit = max(limit, max(abs(bracket.lo).mag, abs(bracket.hi).mag) - BISECTION_BITS)
            if width <= limit:
                return
            bracket.split(bracket.lo.midpoint(bracket.hi))

    def _newton_into(self, bracket: "_Bracket", x: Dyadic, prec: int) -> Dyadic:
        """One Newton step at ``prec`` bits, falling back to the midpoint outside the bracket."""
        candidate: Optional[Dyadic] = None
        xb = x.to_bigreal(prec)
        slope = self.derivative(xb)
        if not slope.is_zero():
            candidate = Dyadic.from_bigreal(xb - self.evaluate(xb) / slope)
        if candidate is None or not bracket.contains(candidate):
            candidate = bracket.lo.midpoint(bracket.hi)
        bracket.split(candidate)
        return candidate


class _Bracket:
    """A shrinking interval [lo, hi] with a sign change of the cubic across it."""

    def __init__(self, cubic: RealCubic, lo: Dyadic, hi: Dyadic):
        if hi < lo:
            lo, hi = hi, lo
        self.cubic = cubic
        self.lo, self.hi = lo, hi
        self.root: Optional[Dyadic] = None
        self.s_lo = cubic.sign_at(lo)
        s_hi = cubic.sign_at(hi)
        if self.s_lo == 0:
            self.root = lo
        elif s_hi == 0:
            self.root = hi
        elif self.s_lo == s_hi:
            raise ValueError(f"no sign change on [{float(lo)}, {float(hi)}]")

    def contains(self, t: Dyadic) -> bool:
        return self.lo < t < self.hi

    def split(self, t: Dyadic) -> None:
        s = self.cubic.sign_at(t)
        if s == 0:
            self.root = t
        elif s == self.s_lo:
            self.lo = t
        else:
            self.hi = t


def real_root_count(model: WeierstrassModel) -> int:
    """Number of real roots of f: three when Δ > 0, one when Δ < 0."""
    return 3 if model.delta > 0 else 1


def largest_real_root(model: WeierstrassModel, bits: int) -> BigReal:
    """The largest real root e1 of f with absolute error below 2^-bits.

    Args:
        model: Nonsingular integral model
        bits: Absolute accuracy wanted

    Returns:
        e1 as a BigReal
    """
    cubic = RealCubic.from_model(model)
    top = Dyadic.power_of_two(cubic.root_bound_exponent())
    if real_root_count(model) == 3:
        bottom = cubic.upper_critical_point()
    else:
        bottom = -top
    root = cubic.refine_root(bottom, top, bits)
    logger.debug(f"e1 ~ {float(root):.6g} located to {bits} bits")
    return root
