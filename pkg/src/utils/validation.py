from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from ..arith.bigreal import LOG10_2, bits_for_digits
from ..exceptions import RequestParseError
from ..model.points import RationalPoint, require_on_curve
from ..model.weierstrass import WeierstrassModel, derive_invariants


@dataclass
class HeightRequest:
    """One parsed compute request: curve, point, precision and flags."""
    coefficients: Tuple[int, int, int, int, int]
    point: RationalPoint
    digits: int
    bits: int
    flags: Dict[str, Union[bool, int, str]] = field(default_factory=dict)

    @property
    def model(self) -> WeierstrassModel:
        return derive_invariants(*self.coefficients)


class RequestValidator:
    """Parsing and validation of command-line height requests."""

    @staticmethod
    def parse_integer(text: str, name: str = "value") -> int:
        """Parse a decimal integer, rejecting anything else."""
        cleaned = text.strip()
        try:
            return int(cleaned, 10)
        except ValueError:
            raise RequestParseError(f"{name} must be a decimal integer, got '{text}'")

    @staticmethod
    def parse_rational(text: str, name: str = "coordinate") -> Fraction:
        """
        Parse 'n' or 'num/den' into an exact rational.

        Args:
            text: Decimal integer or fraction
            name: Field name used in error messages
        """
        parts = text.strip().split("/")
        if len(parts) == 1:
            return Fraction(RequestValidator.parse_integer(parts[0], name))
        if len(parts) != 2:
            raise RequestParseError(f"{name} must look like 'num/den', got '{text}'")
        num = RequestValidator.parse_integer(parts[0], name)
        den = RequestValidator.parse_integer(parts[1], name)
        if den == 0:
            raise RequestParseError(f"{name} has a zero denominator")
        return Fraction(num, den)

    @staticmethod
    def parse_curve(text: str) -> Tuple[int, int, int, int, int]:
        """Parse 'a1,a2,a3,a4,a6' (brackets optional)."""
        cleaned = text.strip().strip("[]")
        parts = cleaned.split(",")
        if len(parts) != 5:
            raise RequestParseError(f"curve needs 5 coefficients a1,a2,a3,a4,a6, got {len(parts)}")
        names = ["a1", "a2", "a3", "a4", "a6"]
        return tuple(RequestValidator.parse_integer(p, n) for p, n in zip(parts, names))

    @staticmethod
    def parse_point(text: str) -> RationalPoint:
        """Parse 'x,y' with rational coordinates, or 'O' for the point at infinity."""
        cleaned = text.strip()
        if cleaned.upper() in ("O", "INFINITY", "INF"):
            return RationalPoint.infinity()
        parts = cleaned.strip("()").split(",")
        if len(parts) != 2:
            raise RequestParseError(f"point must look like 'x,y' or 'O', got '{text}'")
        return RationalPoint(
            RequestValidator.parse_rational(parts[0], "x"),
            RequestValidator.parse_rational(parts[1], "y"),
        )

    @staticmethod
    def parse_precision(
        digits: Optional[int], bits: Optional[int], default_digits: int = 30
    ) -> Tuple[int, int]:
        """
        Resolve the requested precision to (decimal digits, bits).

        Args:
            digits: Requested decimal digits, if any
            bits: Requested bits, if any (takes precedence)
            default_digits: Used when neither is given

        Returns:
            Tuple of digits to print and bits to compute
        """
        if bits is not None:
            if bits < 1:
                raise RequestParseError(f"bits must be positive, got {bits}")
            return max(1, int(bits * LOG10_2)), bits
        digits = default_digits if digits is None else digits
        if digits < 1:
            raise RequestParseError(f"digits must be positive, got {digits}")
        return digits, bits_for_digits(digits)

    @staticmethod
    def build_request(
        curve: str,
        point: str,
        digits: Optional[int] = None,
        bits: Optional[int] = None,
        default_digits: int = 30,
        flags: Optional[Dict[str, Union[bool, int, str]]] = None,
    ) -> HeightRequest:
        """
        Parse and validate a full request.

        Raises:
            RequestParseError: On malformed input
            SingularCurveError: If the curve is singular
            PointNotOnCurveError: If the point is not on the curve
        """
        coefficients = RequestValidator.parse_curve(curve)
        parsed_point = RequestValidator.parse_point(point)
        resolved_digits, resolved_bits = RequestValidator.parse_precision(
            digits, bits, default_digits
        )
        request = HeightRequest(
            coefficients, parsed_point, resolved_digits, resolved_bits, dict(flags or {})
        )
        require_on_curve(request.model, parsed_point)
        return request


def format_rational(value: Fraction) -> str:
    """Exact 'num/den' text, denominator always written."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def format_terms(terms: List[Tuple[int, Fraction]]) -> List[Dict[str, str]]:
    return [{"q": str(q), "mu": format_rational(mu)} for q, mu in terms]
