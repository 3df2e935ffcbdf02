"""Command-line front end.

Exit codes (stable):

    0   success
    1   reproduce-paper: at least one check failed
    2   usage error (bad flags)
    3   input or output file could not be read or written
    4   evidence file is not well-formed UTF-8 JSON
    5   evidence file violates the schema
    6   evidence file describes invalid evidence (bad masses, labels, ...)
    10  too few evidences for fusion (fewer than 3)
    11  total conflict: Dempster's rule undefined
    12  evidences live on different frames
    13  invalid weights (wrong count, negative, not summing to 1, zero sum)
    14  invalid reliability information (mixed presence, non-positive)
    19  any other evidence error
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import conformance, reference
from .divergence import gbjs_divergence, gbjs_equal_weights
from .documents import (
    fmt,
    load_evidence,
    mass_to_list,
    render_mass,
    render_report,
    report_to_json,
)
from .errors import (
    DegenerateExclusion,
    EvidenceError,
    EvidenceSyntaxError,
    FrameMismatch,
    LengthMismatch,
    MixedReliabilityInfo,
    NonpositiveReliability,
    SchemaError,
    TooFewEvidences,
    TotalConflict,
    UnnormalizedWeights,
    ValidationError,
    ZeroWeightSum,
)
from .evidence import combine_n
from .fusion import diagnose, fuse

EXIT_OK = 0
EXIT_CHECKS_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

EXIT_CODES = [
    (EvidenceSyntaxError, 4),
    (SchemaError, 5),
    (ValidationError, 6),
    (TooFewEvidences, 10),
    (TotalConflict, 11),
    (FrameMismatch, 12),
    ((LengthMismatch, UnnormalizedWeights, ZeroWeightSum, DegenerateExclusion), 13),
    ((MixedReliabilityInfo, NonpositiveReliability), 14),
    (EvidenceError, 19),
]


def exit_code_for(exc: EvidenceError) -> int:
    for kind, code in EXIT_CODES:
        if isinstance(exc, kind):
            return code
    return 19


def _precision(value: str) -> Optional[int]:
    if value == "full":
        return None
    try:
        p = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError("precision must be an integer or 'full'")
    if not 0 <= p <= 17:
        raise argparse.ArgumentTypeError("precision must be between 0 and 17")
    return p


def _weights(value: str) -> list[float]:
    try:
        return [float(x) for x in value.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"weights must be comma-separated numbers: {value!r}")


def _load(args):
    return load_evidence(args.input, strict_normalize=args.strict_normalize)


def cmd_fuse(args) -> int:
    doc = _load(args)
    report = fuse(doc.evidence_sources(strict_normalize=args.strict_normalize))
    sys.stdout.write(render_report(report, args.precision))
    if args.out:
        Path(args.out).write_text(report_to_json(report), encoding="utf-8")
    return EXIT_OK


def cmd_divergence(args) -> int:
    ms = _load(args).mass_functions(strict_normalize=args.strict_normalize)
    value = gbjs_equal_weights(ms) if args.equal else gbjs_divergence(ms, args.weights)
    digits = 4 if args.precision is None else args.precision
    print(f"GBJS = {value!r} ({value:.{digits}f})")
    return EXIT_OK


def cmd_combine(args) -> int:
    ms = _load(args).mass_functions(strict_normalize=args.strict_normalize)
    result = combine_n(ms)
    lines = [f"Dempster combination of {len(ms)} sources:"] + render_mass(result, args.precision)
    lines.append(f"diagnosis: {','.join(diagnose(result).members)}")
    print("\n".join(lines))
    if args.out:
        Path(args.out).write_text(
            json.dumps({"frame": list(result.frame.elements), "combined": mass_to_list(result)},
                       indent=2) + "\n",
            encoding="utf-8",
        )
    return EXIT_OK


def _comparison_table(precision) -> str:
    lines = ["fused results next to the reference method (reference, not computed):"]
    for freq in reference.FREQUENCIES:
        report = fuse(reference.sensor_sources(freq))
        for labels, theirs in reference.JIANG_FUSED[freq].items():
            ours = report.final[labels]
            key = "{" + ",".join(labels) + "}"
            lines.append(
                f"  {freq}  {key:<12} computed {fmt(ours, precision)}"
                f"  published {fmt(reference.FUSED[freq][labels], precision)}"
                f"  reference {fmt(theirs, precision)}"
            )
    return "\n".join(lines) + "\n"


def cmd_reproduce_paper(args) -> int:
    checks = conformance.run_all(cases=args.cases)
    sys.stdout.write(conformance.render_checks(checks))
    sys.stdout.write("\n" + _comparison_table(args.precision))
    return EXIT_OK if all(c.passed for c in checks) else EXIT_CHECKS_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gbjsfusion",
        description="Evidence fusion with the generalised belief Jensen-Shannon divergence.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=_precision, default=4,
                        help="decimals in text output, or 'full' (default: 4)")
    with_input = argparse.ArgumentParser(add_help=False, parents=[common])
    with_input.add_argument("input", type=Path, help="evidence document (JSON)")
    with_input.add_argument("--strict-normalize", action="store_true",
                            help="rescale every source's masses to sum to exactly 1")

    p = sub.add_parser("fuse", parents=[with_input], help="run the full fusion pipeline")
    p.add_argument("--out", type=Path, help="also write a JSON report here")
    p.set_defaults(func=cmd_fuse)

    p = sub.add_parser("divergence", parents=[with_input], help="GBJS divergence of all sources")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--weights", type=_weights, help="comma-separated weights summing to 1")
    group.add_argument("--equal", action="store_true", help="use equal weights 1/k")
    p.set_defaults(func=cmd_divergence)

    p = sub.add_parser("combine", parents=[with_input], help="plain Dempster combination")
    p.add_argument("--out", type=Path, help="also write the result as JSON here")
    p.set_defaults(func=cmd_combine)

    p = sub.add_parser("reproduce-paper", parents=[common],
                       help="check the published worked examples and tables")
    p.add_argument("--cases", type=int, default=conformance.PROPERTY_CASES,
                   help="randomized property cases (default: %(default)s)")
    p.set_defaults(func=cmd_reproduce_paper)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except EvidenceError as exc:
        where = f" [stage: {exc.stage}]" if exc.stage else ""
        step = f" [step: {exc.step}]" if exc.step else ""
        print(f"error: {type(exc).__name__}: {exc}{where}{step}", file=sys.stderr)
        return exit_code_for(exc)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
