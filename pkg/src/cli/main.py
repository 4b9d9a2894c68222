"""
Gonality Census Command Line
============================

Subcommands:
    classify FORM            type, anatomy, normal form and point counts of a quadratic form
    orth FORM                orthogonal group of a form (--method naive|fast)
    census                   exhaustive search for genus-5 curves of gonality >= 5
    count FORM...            points of V(forms) over F_{2^k}
    verify                   recompute the example battery and the N_2 table
    tables                   N_2 table plus census tables from a census summary

``--format lines`` switches every subcommand to tab-separated machine output.
"""

import argparse
import logging
import sys
from typing import List, Optional

from src.census.census_pipeline import Q1_CHOICES
from src.cli.command_handlers import EXIT_USAGE
from src.cli.command_router import CommandRouter
from src.cli.verification import SCOPES

logger = logging.getLogger("gonality-census")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gonality-census",
        description="Maximal point counts of binary curves of genus <= 5 with fixed gonality",
    )
    parser.add_argument("--format", choices=["text", "lines"], default="text", help="Output format")
    parser.add_argument("--verbose", action="store_true", help="Debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    classify = sub.add_parser("classify", help="Classify a quadratic form")
    classify.add_argument("form", help="Form such as 'vw + xy'")
    classify.add_argument("--n", type=int, default=5, help="Number of variables (default 5: v, w, x, y, z)")

    orth = sub.add_parser("orth", help="Orthogonal group of a quadratic form")
    orth.add_argument("form")
    orth.add_argument("--n", type=int, default=5)
    orth.add_argument("--method", default="fast", help="naive or fast")
    orth.add_argument("--elements", action="store_true", help="List the group elements as hex matrices")

    census = sub.add_parser("census", help="Run the census")
    census.add_argument("--q1", default="both", choices=list(Q1_CHOICES), help="3, 4 or both")
    census.add_argument("--jobs", type=int, default=None, help="Worker processes (default GONALITY_CENSUS_JOBS or 1)")
    census.add_argument("--out", default="census.tsv", help="Census file")
    census.add_argument("--resume", action="store_true", help="Reuse finished work units")
    census.add_argument("--chunk-size", type=int, default=None, help="Candidate forms per work unit")
    census.add_argument("--log-file", default=None, help="Log file (relative names go to the log directory)")
    census.add_argument("--quiet", action="store_true", help="No progress bars or phase summaries")

    count = sub.add_parser("count", help="Count points of a projective variety")
    count.add_argument("forms", nargs="+")
    count.add_argument("--ambient", default="P2", help="P2, P3 or P4")
    count.add_argument("--k", type=int, default=1, help="Count over F_{2^k}")

    verify = sub.add_parser("verify", help="Run the verification battery")
    verify.add_argument("--scope", default="all", choices=SCOPES)
    verify.add_argument("--census", default=None, help="Census file for the census-backed entries")

    tables = sub.add_parser("tables", help="Print the N_2 table and census tables")
    tables.add_argument("--census", default=None)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else 0
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO)
    result = CommandRouter().handle_command(args.command, args)
    output = result.lines if args.format == "lines" else result.text
    for line in output:
        print(line)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
