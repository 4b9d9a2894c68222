"""
Command Handlers
================

One handler per subcommand. Each takes the parsed argparse namespace and
returns a CommandResult holding both renderings of its output: human text and
tab-separated machine lines without emoji or timestamps.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import List

from src.common.errors import PolynomialParseError, ZeroFormError
from src.common.logging_utils import setup_script_logging
from src.common.polynomials import AMBIENTS, MultiPoly
from src.census.census_pipeline import CensusConfig, run_census
from src.census.census_records import (
    CensusSummary, read_census_summary, render_summary_tables, summary_path_for,
)
from src.cli.verification import render_report_lines, render_report_text, run_verification
from src.curves.curvekit import count_points
from src.quadratic_forms.group_strategies import get_orthogonal_group_strategy
from src.quadratic_forms.quadform import QuadraticForm, anatomy, classify, count_proj_points, normal_form

logger = logging.getLogger("gonality-census")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


@dataclass
class CommandResult:
    exit_code: int = EXIT_OK
    text: List[str] = field(default_factory=list)
    lines: List[str] = field(default_factory=list)


def _parse_form(text: str, n: int) -> QuadraticForm:
    if not text or not text.strip():
        raise PolynomialParseError("Empty form")
    return QuadraticForm.parse(text, n)


def handle_classify(args) -> CommandResult:
    """Type, anatomy, normal-form shape and point counts of one form."""
    form = _parse_form(args.form, args.n)
    try:
        form_type = classify(form).label
    except ValueError:
        form_type = "unclassified"
    result = CommandResult()
    result.text.append(f"🔍 {form} (n = {form.n})")
    result.text.append(f"   Type: {form_type}")
    result.lines.append(f"type\t{form_type}")
    try:
        info = anatomy(form)
    except ZeroFormError:
        return result
    shape = normal_form(form)
    counts = [count_proj_points(form, k) for k in range(1, 5)]
    result.text += [
        f"   Radical dimension: {len(info.radical_basis)}",
        f"   Singular subspace dimension: {len(info.singular_basis)}",
        f"   Normal form: {shape.form} ({shape.shape}, {shape.m} active variables)",
        f"   Points over F_2, F_4, F_8, F_16: {', '.join(str(c) for c in counts)}",
    ]
    result.lines += [
        f"radical_dim\t{len(info.radical_basis)}",
        f"singular_dim\t{len(info.singular_basis)}",
        f"normal_form\t{shape.shape}\t{shape.m}\t{shape.form.hex_id}",
        "points\t" + "\t".join(str(c) for c in counts),
    ]
    return result


def handle_orth(args) -> CommandResult:
    form = _parse_form(args.form, args.n)
    strategy = get_orthogonal_group_strategy(args.method)
    group = strategy.compute(form)
    result = CommandResult()
    result.text += [
        f"🔄 O({form})",
        f"   Strategy: {strategy.get_strategy_name()}",
        f"   Order: {group.order}",
        f"   Time: {strategy.last_elapsed:.2f} seconds",
    ]
    result.lines.append(f"order\t{group.order}")
    if args.elements:
        for element in group.to_hex_list():
            result.text.append(f"   {element}")
            result.lines.append(f"element\t{element}")
    return result


def handle_count(args) -> CommandResult:
    if args.ambient not in AMBIENTS or args.ambient == "A2":
        raise ValueError(f"Unknown ambient: {args.ambient}. Supported: P2, P3, P4")
    if not args.forms or any(not f.strip() for f in args.forms):
        raise PolynomialParseError("Empty form")
    polys = [MultiPoly.parse(text, args.ambient) for text in args.forms]
    dim = len(AMBIENTS[args.ambient]) - 1
    count = count_points(polys, dim, args.k)
    result = CommandResult()
    result.text.append(f"📍 V({', '.join(str(p) for p in polys)}) has {count} points over F_{1 << args.k}")
    result.lines.append(f"count\t{args.k}\t{count}")
    return result


def _summary_lines(summary: CensusSummary) -> List[str]:
    lines = []
    for key in sorted(summary.rows):
        row = summary.rows[key]
        lines.append(f"census\t{row.label}\t{row.q1}\t{row.group_order}\t{row.a_size}\t{row.b_size}\t{row.curves}")
        lines.append(f"histogram\t{row.label}\t" + "\t".join(str(c) for c in row.histogram))
    return lines


def handle_census(args) -> CommandResult:
    config = CensusConfig.from_environment(
        q1_choice=args.q1,
        workers=args.jobs,
        output_path=Path(args.out),
        resume=args.resume,
        chunk_size=args.chunk_size,
        log_file=args.log_file,
        quiet=args.quiet,
    )
    script_logger = setup_script_logging(log_file=args.log_file, script_path="gonality_census")
    emit = script_logger.print_and_log if args.format == "text" and not args.quiet else script_logger.log
    try:
        summary = run_census(config, emit)
    finally:
        script_logger.close_log()
    result = CommandResult(text=[render_summary_tables(summary)], lines=_summary_lines(summary))
    for triple in summary.flagged:
        result.lines.append("flagged\t" + "\t".join(triple))
    return result


def handle_verify(args) -> CommandResult:
    report = run_verification(args.scope, Path(args.census) if args.census else None)
    return CommandResult(
        exit_code=EXIT_OK if report.passed else EXIT_FAILURE,
        text=render_report_text(report),
        lines=render_report_lines(report),
    )


def handle_tables(args) -> CommandResult:
    """The N_2 table with provenance, plus the census tables when a census is given."""
    census = Path(args.census) if args.census else None
    report = run_verification("all", census)
    table2 = [line for line in render_report_lines(report) if line.startswith("table2\t")]
    text = [line for line in render_report_text(report) if line.startswith("|") or line.startswith("N_2")]
    result = CommandResult(exit_code=EXIT_OK if report.passed else EXIT_FAILURE, text=text, lines=table2)
    if census is not None:
        summary = read_census_summary(summary_path_for(census))
        result.text += ["", render_summary_tables(summary)]
        result.lines += _summary_lines(summary)
    return result

