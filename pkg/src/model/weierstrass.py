"""Integral Weierstrass models y^2 + a1xy + a3y = x^3 + a2x^2 + a4x + a6."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from ..exceptions import NonIntegralResultError, SingularCurveError

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class WeierstrassModel:
    """An integral Weierstrass equation together with its b-invariants and Δ.

    Build instances with :func:`derive_invariants`, which checks Δ != 0.
    """

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    b2: int
    b4: int
    b6: int
    b8: int
    delta: int

    @property
    def coefficients(self) -> Tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def c4(self) -> int:
        return self.b2 * self.b2 - 24 * self.b4

    @property
    def size_bits(self) -> int:
        """Bit size of the largest b-invariant, a stand-in for log2 ||W||."""
        return max(abs(b).bit_length() for b in (self.b2, self.b4, self.b6, self.b8, 1))

    def contains(self, x: Fraction, y: Fraction) -> bool:
        """Whether (x, y) satisfies the equation exactly."""
        lhs = y * y + self.a1 * x * y + self.a3 * y
        rhs = x * x * x + self.a2 * x * x + self.a4 * x + self.a6
        return lhs == rhs

    def cubic(self, x: Scalar) -> Scalar:
        """f(x) = 4x^3 + b2x^2 + 2b4x + b6, i.e. (2y + a1x + a3)^2 along the curve."""
        return ((4 * x + self.b2) * x + 2 * self.b4) * x + self.b6

    def __str__(self) -> str:
        return "[" + ",".join(str(a) for a in self.coefficients) + "]"


def derive_invariants(a1: int, a2: int, a3: int, a4: int, a6: int) -> WeierstrassModel:
    """Build a model from its coefficients, computing b2, b4, b6, b8 and Δ.

    Raises:
        SingularCurveError: If Δ = 0
    """
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    delta = -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    if delta == 0:
        raise SingularCurveError(f"curve [{a1},{a2},{a3},{a4},{a6}] is singular")
    return WeierstrassModel(a1, a2, a3, a4, a6, b2, b4, b6, b8, delta)


@dataclass(frozen=True)
class PointMap:
    """The substitution x = u^2 x' + r, y = u^3 y' + s u^2 x' + t."""

    u: Scalar
    r: Scalar
    s: Scalar
    t: Scalar

    def forward(self, x: Fraction, y: Fraction) -> Tuple[Fraction, Fraction]:
        """Coordinates on the new model of a point (x, y) of the old one."""
        u, r, s, t = (Fraction(v) for v in (self.u, self.r, self.s, self.t))
        x_new = (x - r) / (u * u)
        y_new = (y - s * (x - r) - t) / (u ** 3)
        return x_new, y_new

    def backward(self, x: Fraction, y: Fraction) -> Tuple[Fraction, Fraction]:
        """Coordinates on the old model of a point (x', y') of the new one."""
        u, r, s, t = (Fraction(v) for v in (self.u, self.r, self.s, self.t))
        return u * u * x + r, u ** 3 * y + s * u * u * x + t

    def inverse(self) -> "PointMap":
        u, r, s, t = (Fraction(v) for v in (self.u, self.r, self.s, self.t))
        return PointMap(1 / u, -r / (u * u), -s / u, (r * s - t) / (u ** 3))


def _integral(value: Fraction, name: str) -> int:
    if value.denominator != 1:
        raise NonIntegralResultError(f"transformed coefficient {name} = {value} is not integral")
    return value.numerator


def transform_model(
    model: WeierstrassModel, u: Scalar, r: Scalar = 0, s: Scalar = 0, t: Scalar = 0
) -> Tuple[WeierstrassModel, PointMap]:
    """Apply the standard [u, r, s, t] change of variables.

    Args:
        model: Source model
        u: Scaling, nonzero
        r, s, t: Translation parameters

    Returns:
        The transformed model and the map carrying points of ``model`` to it

    Raises:
        NonIntegralResultError: If a transformed coefficient is not an integer
    """
    u, r, s, t = (Fraction(v) for v in (u, r, s, t))
    if u == 0:
        raise ValueError("u must be nonzero")
    a1, a2, a3, a4, a6 = model.coefficients
    new = {
        "a1": (a1 + 2 * s) / u,
        "a2": (a2 - s * a1 + 3 * r - s * s) / u ** 2,
        "a3": (a3 + r * a1 + 2 * t) / u ** 3,
        "a4": (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u ** 4,
        "a6": (a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1) / u ** 6,
    }
    coeffs = [_integral(new[k], k) for k in ("a1", "a2", "a3", "a4", "a6")]
    transformed = derive_invariants(*coeffs)
    logger.debug(f"Transformed {model} by [{u},{r},{s},{t}] into {transformed}")
    return transformed, PointMap(u, r, s, t)
