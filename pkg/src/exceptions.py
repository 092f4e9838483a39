"""Exceptions raised by the height library and its command-line front end."""


class HeightError(Exception):
    """Base class for every error raised by this package."""


class SingularCurveError(HeightError):
    """The Weierstrass coefficients define a curve with zero discriminant."""


class NonIntegralResultError(HeightError):
    """A change of variables produced non-integral Weierstrass coefficients."""


class PointNotOnCurveError(HeightError):
    """The given coordinates do not satisfy the Weierstrass equation."""


class TwoTorsionPointError(HeightError):
    """The archimedean reduction was asked to handle a point with 2P = O."""


class TorsionOrbitError(HeightError):
    """The doubling orbit of a point reaches O before the requested term."""


class PrecisionExhaustedError(HeightError):
    """A truncated computation ran out of digits it was supposed to have."""


class NoFractionFoundError(HeightError):
    """Rational reconstruction found no admissible fraction in the interval."""


class RequestParseError(HeightError):
    """A command-line request could not be parsed."""
