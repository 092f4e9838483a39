"""Archimedean contribution Ψ∞ through the AGM / 2-isogeny recursion.

A point is first moved onto a model y^2 = x(x + a^2)(x + b^2) with a > b > 0
and x >= 0, recording in a ledger how its local height relates to the
original one.  On that model the local height is a fast converging series
of logarithms of x_n + a_n^2 driven by the arithmetic-geometric mean.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, log2
from typing import List, Tuple, Union

from ...arith.bigreal import BigReal, log1m_series, log_of_fraction
from ...exceptions import PrecisionExhaustedError, TwoTorsionPointError
from ...model.points import RationalPoint
from ...model.weierstrass import WeierstrassModel
from .roots import largest_real_root, real_root_count

logger = logging.getLogger(__name__)

AGM_GUARD_BITS = 32
REDUCTION_GUARD_BITS = 96
LN2 = 0.6931471805599453
MAX_REDUCTION_ATTEMPTS = 4


@dataclass(frozen=True)
class AgmInput:
    """Starting values a0 >= b0 > 0 and x0 >= 0 of the AGM recursion.

    a0 = b0 only shows up after rounding a nearly degenerate start.
    """

    a0: BigReal
    b0: BigReal
    x0: BigReal

    def __post_init__(self) -> None:
        if not (self.a0 >= self.b0 > 0):
            raise ValueError("AGM input needs a0 >= b0 > 0")
        if self.x0.sign() < 0:
            raise ValueError("AGM input needs x0 >= 0")

    def with_prec(self, prec: int) -> "AgmInput":
        return AgmInput(self.a0.with_prec(prec), self.b0.with_prec(prec), self.x0.with_prec(prec))


@dataclass(frozen=True)
class LedgerEntry:
    """One step of the reduction: λ_before = (λ_after + log|argument|) / degree."""

    kind: str
    degree: int
    argument: Union[Fraction, BigReal]

    def log_argument(self, bits: int) -> BigReal:
        if isinstance(self.argument, BigReal):
            return abs(self.argument).with_prec(bits).log()
        return log_of_fraction(abs(self.argument), bits)


@dataclass
class CorrectionLedger:
    """The duplication and isogeny steps applied on the way to the AGM model."""

    entries: List[LedgerEntry] = field(default_factory=list)

    def record(self, kind: str, degree: int, argument: Union[Fraction, BigReal]) -> None:
        self.entries.append(LedgerEntry(kind, degree, argument))

    @property
    def degree_factor(self) -> int:
        degree = 1
        for entry in self.entries:
            degree *= entry.degree
        return degree

    @property
    def additive_terms(self) -> List[Tuple[Fraction, Union[Fraction, BigReal]]]:
        """(weight, argument) pairs with λ_start = λ_final / degree_factor + Σ weight·log|argument|."""
        terms = []
        weight = Fraction(1)
        for entry in self.entries:
            weight /= entry.degree
            terms.append((weight, entry.argument))
        return terms

    def unwind(self, value: BigReal, bits: int) -> BigReal:
        """Carry a local height on the final model back to the starting one."""
        for entry in reversed(self.entries):
            value = (value + entry.log_argument(bits)) / entry.degree
        return value

    def __len__(self) -> int:
        return len(self.entries)


def _loss(*parts: BigReal, result: BigReal) -> int:
    """Bits lost to cancellation when ``result`` is a sum of ``parts``."""
    nonzero = [p.mag for p in parts if not p.is_zero()]
    if not nonzero:
        return 0
    if result.is_zero():
        return 1 << 20
    return max(0, max(nonzero) - result.mag)


def on_egg(model: WeierstrassModel, x: Fraction) -> bool:
    """Whether a real point with abscissa x lies on the bounded component of E(R).

    That component exists only for Δ > 0 and sits left of the larger critical
    point (-b2 + sqrt(c4)) / 12 of f, which is decided exactly.
    """
    if model.delta <= 0:
        return False
    t = 12 * Fraction(x) + model.b2
    return t < 0 or t * t < model.c4


def _three_root_data(
    model: WeierstrassModel, x: Fraction, prec: int, ledger: CorrectionLedger
) -> Tuple[AgmInput, int]:
    e1 = largest_real_root(model, prec)
    if on_egg(model, x):
        # the egg component: 2P lies on the identity component
        fx = model.cubic(x)
        x = Fraction(x ** 4 - model.b4 * x ** 2 - 2 * model.b6 * x - model.b8) / fx
        ledger.record("duplication", 4, fx)
    b2, b4 = model.b2, model.b4
    p = 12 * e1 + b2
    q = 12 * e1 * e1 + 2 * b2 * e1 + 2 * b4
    disc = p * p - 16 * q
    if disc.sign() < 0:
        raise PrecisionExhaustedError("two roots of the cubic merged at working precision")
    a_sq = (p + disc.sqrt()) / 8
    b_sq = q / (4 * a_sq)
    xb = BigReal.from_fraction(x, prec)
    x0 = xb - e1
    loss = max(
        _loss(12 * e1 * e1, 2 * b2 * e1, BigReal.from_int(2 * b4, prec), result=q),
        _loss(p * p, 16 * q, result=disc),
        _loss(xb, e1, result=x0 + a_sq),
    )
    if x0.sign() < 0:
        x0 = BigReal.zero(prec)
    return AgmInput(a_sq.sqrt(), b_sq.sqrt(), x0), loss


def _one_root_data(
    model: WeierstrassModel, x: Fraction, prec: int, ledger: CorrectionLedger
) -> Tuple[AgmInput, int]:
    e = largest_real_root(model, prec)
    b2, b4 = model.b2, model.b4
    xb = BigReal.from_fraction(x, prec)
    big_x = xb - e
    u = 3 * e + Fraction(b2, 4)
    v = 3 * e * e + Fraction(b2, 2) * e + Fraction(b4, 2)
    loss = max(
        _loss(xb, e, result=big_x),
        _loss(3 * e * e, Fraction(b2, 2) * e, BigReal.from_fraction(Fraction(b4, 2), prec), result=v),
    )
    if big_x.sign() <= 0 or v.sign() <= 0:
        raise PrecisionExhaustedError("lost the sign of x - e in the one-root reduction")
    root_v = v.sqrt()
    a_sq = 4 * root_v
    if u.sign() < 0:
        gap = 4 * v - u * u
        loss = max(loss, _loss(4 * v, u * u, result=gap))
        b_sq = gap / (2 * root_v - u)
    else:
        b_sq = u + 2 * root_v
    diff = big_x - root_v
    x0 = diff * diff / big_x
    ledger.record("isogeny", 2, big_x)
    return AgmInput(a_sq.sqrt(), b_sq.sqrt(), x0), loss


def reduce_to_agm_data(
    model: WeierstrassModel, point: RationalPoint, bits: int
) -> Tuple[AgmInput, CorrectionLedger]:
    """Move P onto a model y^2 = x(x + a0^2)(x + b0^2) with x >= 0.

    Args:
        model: Integral model with Δ != 0
        point: Affine point with 2P != O
        bits: Absolute accuracy wanted for the eventual local height

    Returns:
        AgmInput and the ledger of steps taken

    Raises:
        TwoTorsionPointError: If 2P = O
        PrecisionExhaustedError: If cancellation keeps outrunning the guard bits
    """
    if point.is_infinity or model.cubic(point.x) == 0:
        raise TwoTorsionPointError(f"{point} satisfies 2P = O on {model}")
    x = point.x
    cubic_bits = max(abs(c).bit_length() for c in (model.b2, 2 * model.b4, model.b6, 1))
    x_bits = max(x.numerator.bit_length(), x.denominator.bit_length())
    prec = bits + 2 * cubic_bits + x_bits + REDUCTION_GUARD_BITS
    three = real_root_count(model) == 3
    for attempt in range(MAX_REDUCTION_ATTEMPTS):
        ledger = CorrectionLedger()
        try:
            if three:
                data, loss = _three_root_data(model, x, prec, ledger)
            else:
                data, loss = _one_root_data(model, x, prec, ledger)
        except PrecisionExhaustedError:
            loss = prec
        required = bits + REDUCTION_GUARD_BITS + loss
        if required <= prec:
            logger.debug(
                f"AGM data at {prec} bits: {len(ledger)} ledger steps, {loss} bits cancelled"
            )
            return data, ledger
        logger.debug(f"Reduction attempt {attempt} lost {loss} bits, retrying")
        prec = required + prec
    raise PrecisionExhaustedError(f"archimedean reduction failed after {MAX_REDUCTION_ATTEMPTS} attempts")


def agm_sequences(
    data: AgmInput, steps: int
) -> Tuple[List[BigReal], List[BigReal], List[BigReal]]:
    """a_n, b_n, x_n for n = 0..steps at the precision of ``data``.

    a_{n+1} = (a_n + b_n)/2, b_{n+1} = sqrt(a_n b_n) and
    x_{n+1} = (x_n - a_n b_n + sqrt((x_n + a_n^2)(x_n + b_n^2))) / 2.
    """
    a, b, x = [data.a0], [data.b0], [data.x0]
    for _ in range(steps):
        an, bn, xn = a[-1], b[-1], x[-1]
        ab = an * bn
        x.append((xn - ab + ((xn + an * an) * (xn + bn * bn)).sqrt()).shift(-1))
        a.append((an + bn).shift(-1))
        b.append(ab.sqrt())
    return a, b, x


def truncation_index(log2_theta: float, bits: int) -> int:
    """Number N of series terms giving absolute error 2^-bits.

    ``log2_theta`` is log2 of ϑ = a0/b0 - 1 + sqrt(a0/b0 - 1); the tail after N
    terms is at most 2^(2 - 2^(N-1)) ϑ.
    """
    inner = bits + 2 + log2_theta
    if inner <= 1:
        return 3
    return max(3, ceil(log2(inner)) + 1)


def _log_theta(data: AgmInput) -> float:
    ratio = data.a0.with_prec(64) / data.b0.with_prec(64) - 1
    if ratio.is_zero():
        return float("-inf")
    return float((ratio + ratio.sqrt()).log()) / LN2


def agm_lambda(data: AgmInput, bits: int) -> BigReal:
    """Local height λ̂ on the model y^2 = x(x + a0^2)(x + b0^2).

    λ̂ = log D_1 + sum_{n=1..N} 2^n log(D_{n+1} / D_n) with D_n = x_n + a_n^2.

    Args:
        data: AgmInput
        bits: Absolute accuracy wanted

    Returns:
        λ̂ with absolute error below 2^-bits
    """
    log_theta = _log_theta(data)
    steps = 3 if log_theta == float("-inf") else truncation_index(log_theta, bits)
    start = data.x0 + data.a0 * data.a0
    extra = (abs(start.mag) + abs(data.b0.mag) + 2).bit_length()
    prec = bits + steps + AGM_GUARD_BITS + extra
    a, b, x = agm_sequences(data.with_prec(prec), steps + 1)
    d = [x[n] + a[n] * a[n] for n in range(steps + 2)]
    total = d[1].log()
    threshold = -(prec // 8)
    for n in range(1, steps + 1):
        s = (d[n] - d[n + 1]) / d[n]
        if s.is_zero():
            continue
        if s.mag < threshold:
            term = log1m_series(s)
        else:
            term = (d[n + 1] / d[n]).log()
        total = total + term.shift(n)
    logger.debug(f"AGM series: N={steps}, working precision {prec} bits")
    return total


def log_max_one(x: Fraction, bits: int) -> BigReal:
    """log max(1, |x|)."""
    value = abs(Fraction(x))
    if value <= 1:
        return BigReal.zero(bits + 8)
    return log_of_fraction(value, bits + 8)


def lambda_infinity(model: WeierstrassModel, point: RationalPoint, bits: int) -> BigReal:
    """The archimedean local height λ̂∞(P) on ``model`` to 2^-bits.

    Raises:
        TwoTorsionPointError: If 2P = O
    """
    work = bits + 8
    data, ledger = reduce_to_agm_data(model, point, work)
    extra = max(len(ledger).bit_length(), 1)
    value = agm_lambda(data, work + extra)
    return ledger.unwind(value, work + extra)


def psi_infinity(model: WeierstrassModel, point: RationalPoint, bits: int) -> BigReal:
    """Ψ∞(P) = log max(1, |x(P)|) - λ̂∞(P) to absolute error 2^-bits."""
    lam = lambda_infinity(model, point, bits + 2)
    return log_max_one(point.x, bits + 2) - lam
