"""Command-line front end: ``compute`` one height or ``bench`` the test family."""

import argparse
import json
import logging
import re
from typing import Any, Dict, List, Optional

from ..arith.bigreal import BigReal
from ..exceptions import (
    HeightError,
    PointNotOnCurveError,
    RequestParseError,
    SingularCurveError,
)
from ..heights.height import HeightBreakdown, silverman_normalized
from ..heights.pipeline import HeightPipeline
from ..utils.config import Config
from ..utils.validation import HeightRequest, RequestValidator, format_rational, format_terms
from .benchmark import run_benchmark, summarize

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_PARSE = 2
EXIT_NOT_ON_CURVE = 3
EXIT_SINGULAR = 4

NORMALIZATIONS = {
    "cps": "CPS (twice Silverman-book)",
    "silverman": "Silverman-book",
}

# options whose values may legitimately start with a minus sign
SIGNED_VALUE_OPTIONS = ("--curve", "--point")
SIGNED_VALUE = re.compile(r"-\d")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="canonical-height",
        description="Canonical heights of rational points on elliptic curves over Q.",
    )
    parser.add_argument("--config", default="config.yaml", help="Path to the YAML configuration.")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log at DEBUG level.")
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="Compute the canonical height of one point.")
    compute.add_argument("--curve", required=True, help="Coefficients a1,a2,a3,a4,a6.")
    compute.add_argument("--point", required=True, help="'x,y' with x, y integers or num/den, or 'O'.")
    precision = compute.add_mutually_exclusive_group()
    precision.add_argument("--digits", type=int, help="Decimal digits (default from config).")
    precision.add_argument("--bits", type=int, help="Bits of absolute precision.")
    compute.add_argument("--breakdown", action="store_true", help="Also print h, Psi_inf and Psi_f.")
    compute.add_argument("--json", action="store_true", help="Emit JSON instead of text.")
    compute.add_argument("--arch-method", choices=["agm", "series"], help="Archimedean method.")
    compute.add_argument("--trial-division", type=int, metavar="T",
                         help="Handle primes below T by direct local computation.")
    compute.add_argument("--variant-2b4", action="store_true",
                         help="Use the 2B^4 truncation with convergent reconstruction.")
    compute.add_argument("--incremental-basis", action="store_true",
                         help="Refine the coprime basis after every doubling.")
    compute.add_argument("--shrinking-modulus", action="store_true",
                         help="Reduce modulo D^(m+1-n) g0 in pass n.")
    compute.add_argument("--normalization", choices=sorted(NORMALIZATIONS), default="cps",
                         help="Height normalization of the printed value.")

    bench = sub.add_parser("bench", help="Time the family y^2 = x^3 - ax + a at P = (1, 1).")
    bench.add_argument("--sizes", type=int, nargs="+", help="Decimal sizes of a.")
    bench.add_argument("--repetitions", type=int, help="Random curves per size.")
    bench.add_argument("--seed", type=int, help="Random seed.")
    bench.add_argument("--digits", type=int, help="Decimal digits of the heights.")
    bench.add_argument("--multiple", type=int, help="Also time the height of kP.")
    bench.add_argument("--json", action="store_true", help="Emit the summary as JSON.")
    return parser


def attach_signed_values(argv: List[str]) -> List[str]:
    """Rewrite ``--point -1,0`` as ``--point=-1,0``.

    argparse takes any token starting with '-' for an option, so negative
    coordinates and coefficients would otherwise be rejected.
    """
    merged: List[str] = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if (
            token in SIGNED_VALUE_OPTIONS
            and i + 1 < len(argv)
            and SIGNED_VALUE.match(argv[i + 1])
        ):
            merged.append(f"{token}={argv[i + 1]}")
            i += 2
            continue
        merged.append(token)
        i += 1
    return merged


def _options(args: argparse.Namespace, config: Config):
    psi = config.psi_finite_config
    if args.trial_division is not None:
        psi.trial_division_bound = args.trial_division
    psi.use_2b4_variant = psi.use_2b4_variant or args.variant_2b4
    psi.incremental_basis = psi.incremental_basis or args.incremental_basis
    psi.shrinking_modulus = psi.shrinking_modulus or args.shrinking_modulus
    return psi.to_options()


def _decimal(value: Optional[BigReal], digits: int) -> Optional[str]:
    return None if value is None else value.to_fixed_decimal(digits)


def breakdown_to_dict(
    request: HeightRequest, result: HeightBreakdown, normalization: str = "cps"
) -> Dict[str, Any]:
    """The JSON document for one computed height; big numbers are strings."""
    point = request.point
    h_canonical = result.h_canonical
    if normalization == "silverman":
        h_canonical = silverman_normalized(h_canonical)
    return {
        "curve": [str(a) for a in request.coefficients],
        "point": "O" if point.is_infinity else {
            "x": format_rational(point.x),
            "y": format_rational(point.y),
        },
        "precision_bits": request.bits,
        "h_naive": _decimal(result.h_naive, request.digits),
        "psi_finite": {
            "terms": format_terms(list(result.psi_finite.terms)),
            "value": _decimal(result.psi_finite_value, request.digits),
        },
        "psi_infinity": _decimal(result.psi_infinity, request.digits),
        "h_canonical": _decimal(h_canonical, request.digits),
        "normalization": NORMALIZATIONS[normalization],
        "torsion_order": result.torsion_order,
    }


def format_text(document: Dict[str, Any], breakdown: bool) -> str:
    """Text rendering of the same numbers as :func:`breakdown_to_dict`."""
    line = document["h_canonical"]
    if document["torsion_order"] is not None:
        line += f" (torsion, order {document['torsion_order']})"
    lines = [line]
    if breakdown:
        finite = document["psi_finite"]
        if finite["terms"]:
            formal = " + ".join(f"{t['mu']}*log({t['q']})" for t in finite["terms"])
            finite_line = f"psi_finite: {finite['value']} = {formal}"
        else:
            finite_line = "psi_finite: 0 (empty)"
        psi_inf = document["psi_infinity"]
        lines += [
            f"h_naive: {document['h_naive']}",
            f"psi_infinity: {psi_inf if psi_inf is not None else 'n/a (2P = O)'}",
            finite_line,
            f"normalization: {document['normalization']}",
        ]
    return "\n".join(lines)


async def cmd_compute(args: argparse.Namespace, config: Config) -> int:
    """
    Handle ``compute``.

    Returns:
        Process exit code
    """
    try:
        request = RequestValidator.build_request(
            args.curve,
            args.point,
            digits=args.digits,
            bits=args.bits,
            default_digits=config.precision_config.default_digits,
            flags={"breakdown": args.breakdown, "json": args.json},
        )
        options = _options(args, config)
    except RequestParseError as e:
        logger.error(f"Could not parse request: {str(e)}")
        return EXIT_PARSE
    except SingularCurveError as e:
        logger.error(f"Singular curve: {str(e)}")
        return EXIT_SINGULAR
    except PointNotOnCurveError as e:
        logger.error(f"Point not on curve: {str(e)}")
        return EXIT_NOT_ON_CURVE
    except (HeightError, ValueError) as e:
        logger.error(f"Invalid request: {str(e)}")
        return EXIT_PARSE

    pipeline = HeightPipeline(config, options=options, method_name=args.arch_method)
    result = await pipeline.compute(request.model, request.point, request.bits)
    if result is None:
        return EXIT_FAILURE

    document = breakdown_to_dict(request, result, args.normalization)
    if request.flags.get("json"):
        print(json.dumps(document, indent=2))
    else:
        print(format_text(document, bool(request.flags.get("breakdown"))))
    return EXIT_OK


def cmd_bench(args: argparse.Namespace, config: Config) -> int:
    """Handle ``bench``: print the median time per size of a."""
    bench = config.benchmark_config
    sizes: List[int] = args.sizes or bench.digit_sizes
    repetitions = bench.repetitions if args.repetitions is None else args.repetitions
    try:
        frame = run_benchmark(
            sizes,
            repetitions,
            seed=bench.seed if args.seed is None else args.seed,
            precision_digits=args.digits or bench.precision_digits,
            multiple=args.multiple or bench.multiple,
            opts=config.psi_finite_config.to_options(),
        )
    except Exception as e:
        logger.error(f"Benchmark failed: {str(e)}")
        return EXIT_FAILURE

    summary = summarize(frame)
    if args.json:
        print(json.dumps({
            "runs": frame.to_dict(orient="records"),
            "summary": summary.to_dict(orient="records"),
        }, indent=2))
    elif summary.empty:
        print("no runs")
    else:
        print(summary.to_string(index=False))
    return EXIT_OK
