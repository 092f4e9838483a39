"""Timings of ĥ on the family y^2 = x^3 - ax + a with P = (1, 1)."""

import logging
import random
import time
from typing import List, Optional, Tuple

import pandas as pd

from ..arith.bigreal import bits_for_digits
from ..model.points import RationalPoint, multiply
from ..model.weierstrass import WeierstrassModel, derive_invariants
from ..heights.height import canonical_height
from ..heights.nonarch_global import PsiFiniteOptions

logger = logging.getLogger(__name__)

COLUMNS = ["digits", "repetition", "a_bits", "seconds", "height", "multiple", "multiple_ratio"]


def family_curve(a: int) -> Tuple[WeierstrassModel, RationalPoint]:
    """The curve y^2 = x^3 - ax + a and its point (1, 1)."""
    return derive_invariants(0, 0, 0, -a, a), RationalPoint.affine(1, 1)


def random_parameter(digits: int, rng: random.Random) -> int:
    """A random a with exactly ``digits`` decimal digits (a >= 7 keeps the curve smooth)."""
    low = max(10 ** (digits - 1), 7)
    return rng.randrange(low, 10 ** digits)


def run_benchmark(
    digit_sizes: List[int],
    repetitions: int,
    seed: int = 0,
    precision_digits: int = 30,
    multiple: int = 1,
    opts: Optional[PsiFiniteOptions] = None,
) -> pd.DataFrame:
    """
    Time canonical_height on random members of the family.

    Args:
        digit_sizes: Decimal sizes of the parameter a
        repetitions: Curves per size; 0 gives an empty table
        seed: Seed of the parameter generator
        precision_digits: Decimal digits of the computed heights
        multiple: Also compute ĥ(kP) for this k > 1 and report ĥ(kP) / k^2
        opts: Ψ^f switches

    Returns:
        One row per timed curve
    """
    rng = random.Random(seed)
    bits = bits_for_digits(precision_digits)
    rows = []
    for digits in digit_sizes:
        for repetition in range(repetitions):
            a = random_parameter(digits, rng)
            model, point = family_curve(a)
            start = time.perf_counter()
            result = canonical_height(model, point, bits, opts)
            elapsed = time.perf_counter() - start
            ratio = None
            if multiple > 1:
                scaled = canonical_height(model, multiply(model, point, multiple), bits, opts)
                ratio = float(scaled.h_canonical) / multiple ** 2
            logger.info(f"{digits}-digit a, run {repetition}: {elapsed:.4f} s")
            rows.append({
                "digits": digits,
                "repetition": repetition,
                "a_bits": a.bit_length(),
                "seconds": elapsed,
                "height": result.h_canonical.to_fixed_decimal(precision_digits),
                "multiple": multiple,
                "multiple_ratio": ratio,
            })
    return pd.DataFrame(rows, columns=COLUMNS)


def summarize(frame: pd.DataFrame) -> pd.DataFrame:
    """Median time per size, with the ratio to the smallest size."""
    if frame.empty:
        return pd.DataFrame(columns=["digits", "median_seconds", "ratio"])
    summary = (
        frame.groupby("digits", as_index=False)["seconds"]
        .median()
        .rename(columns={"seconds": "median_seconds"})
        .sort_values("digits")
        .reset_index(drop=True)
    )
    summary["ratio"] = summary["median_seconds"] / summary["median_seconds"].iloc[0]
    return summary
