"""
Census Records
==============

The census file (one accepted curve per line, tab-separated
``q1 q2 q3 N1 N2 N3 N4`` with 4-hex-digit form ids), its Markdown sidecar
summary with YAML front matter, and the checks that turn a finished census
into statements about maximal point counts and gonality.
"""

import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import frontmatter

from src.common.errors import CensusAssertionError
from src.curves.curvekit import CurveRecord
from src.curves.reference_curves import GENUS5_MAXIMAL_PENTAGONAL
from src.quadratic_forms.orthgroup import orbit_minimum_transform, orthogonal_group
from src.quadratic_forms.quadform import QuadraticForm

logger = logging.getLogger("gonality-census")

HISTOGRAM_BUCKETS = ("0", "1", "2", "3", ">=4")

MAXIMAL_WITNESS = GENUS5_MAXIMAL_PENTAGONAL.equations


def histogram_bucket(n1: int) -> int:
    return min(n1, len(HISTOGRAM_BUCKETS) - 1)


def write_census_file(path: Path, records: Iterable[CurveRecord]) -> int:
    """Write records sorted by (q1, q2, q3) through a temporary file; returns the count."""
    ordered = sorted(records, key=CurveRecord.sort_key)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    temp = path.with_name(path.name + ".tmp")
    with open(temp, "w", encoding="utf-8") as f:
        for record in ordered:
            f.write("\t".join(record.to_fields()) + "\n")
    os.replace(temp, path)
    return len(ordered)


def iter_census_file(path: Path) -> Iterator[CurveRecord]:
    with open(path, "r", encoding="utf-8") as f:
        for number, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                yield CurveRecord.from_fields(line.split("\t"))
            except ValueError as e:
                raise ValueError(f"{path}:{number}: {e}")


def read_census_file(path: Path) -> List[CurveRecord]:
    return list(iter_census_file(path))


@dataclass
class Q1Summary:
    """One row of the census tables."""
    q1: str
    label: str
    group_order: int
    a_size: int
    b_size: int
    curves: int = 0
    histogram: List[int] = field(default_factory=lambda: [0] * len(HISTOGRAM_BUCKETS))
    wall_time_seconds: float = 0.0

    def add(self, record: CurveRecord):
        self.curves += 1
        self.histogram[histogram_bucket(record.n1)] += 1

    def to_metadata(self) -> Dict[str, Any]:
        return {
            "q1": self.q1,
            "label": self.label,
            "group_order": self.group_order,
            "A": self.a_size,
            "B": self.b_size,
            "curves": self.curves,
            "histogram": dict(zip(HISTOGRAM_BUCKETS, self.histogram)),
        }

    @classmethod
    def from_metadata(cls, data: Dict[str, Any], wall_time: float = 0.0) -> "Q1Summary":
        return cls(
            q1=data["q1"],
            label=data["label"],
            group_order=int(data["group_order"]),
            a_size=int(data["A"]),
            b_size=int(data["B"]),
            curves=int(data["curves"]),
            histogram=[int(data["histogram"][b]) for b in HISTOGRAM_BUCKETS],
            wall_time_seconds=wall_time,
        )


@dataclass
class CensusSummary:
    """Per-Q1 counts and point histograms, flagged triples, and informational timing."""
    rows: Dict[str, Q1Summary] = field(default_factory=dict)
    flagged: List[List[str]] = field(default_factory=list)

    @property
    def total_curves(self) -> int:
        return sum(row.curves for row in self.rows.values())

    def check_totals(self):
        for row in self.rows.values():
            if sum(row.histogram) != row.curves:
                raise CensusAssertionError(f"Histogram of {row.label} does not sum to {row.curves}")

    def to_metadata(self) -> Dict[str, Any]:
        return {
            "census": [self.rows[key].to_metadata() for key in sorted(self.rows)],
            "flagged": [list(t) for t in self.flagged],
            "informational": {
                "wall_time_seconds": {row.label: round(row.wall_time_seconds, 1) for row in self.rows.values()},
            },
        }

    @classmethod
    def from_metadata(cls, metadata: Dict[str, Any]) -> "CensusSummary":
        times = metadata.get("informational", {}).get("wall_time_seconds", {})
        summary = cls(flagged=[list(t) for t in metadata.get("flagged", [])])
        for entry in metadata.get("census", []):
            row = Q1Summary.from_metadata(entry, float(times.get(entry["label"], 0.0)))
            summary.rows[row.q1] = row
        return summary


def summarize_records(records: Iterable[CurveRecord], rows: Dict[str, Q1Summary],
                      flagged: Sequence[Sequence[str]] = ()) -> CensusSummary:
    """Fill curve counts and histograms of prepared per-Q1 rows (keyed by Q1 hex id)."""
    summary = CensusSummary(rows=rows, flagged=sorted(list(t) for t in flagged))
    for row in rows.values():
        row.curves = 0
        row.histogram = [0] * len(HISTOGRAM_BUCKETS)
    for record in records:
        if record.q1.hex_id not in rows:
            raise CensusAssertionError("Record has a Q1 outside the census", record.to_fields())
        rows[record.q1.hex_id].add(record)
    summary.check_totals()
    return summary


def render_summary_tables(summary: CensusSummary) -> str:
    """Markdown body: the counts table and the point histogram, no timing."""
    lines = [
        "# Census Summary",
        "",
        "| Q1 | type | #O(Q1) | #A(Q1) | #B(Q1) | Curves |",
        "|---|---|---|---|---|---|",
    ]
    for key in sorted(summary.rows):
        row = summary.rows[key]
        lines.append(f"| {QuadraticForm.from_hex(row.q1)} | {row.label} | {row.group_order} | "
                     f"{row.a_size} | {row.b_size} | {row.curves} |")
    lines += [
        "",
        "| Q1 | " + " | ".join(HISTOGRAM_BUCKETS) + " |",
        "|---|" + "---|" * len(HISTOGRAM_BUCKETS),
    ]
    for key in sorted(summary.rows):
        row = summary.rows[key]
        lines.append(f"| {row.label} | " + " | ".join(str(c) for c in row.histogram) + " |")
    if summary.flagged:
        lines += ["", f"Flagged for review: {len(summary.flagged)} triples"]
    return "\n".join(lines) + "\n"


def summary_path_for(census_path: Path) -> Path:
    census_path = Path(census_path)
    return census_path.with_name(census_path.stem + ".summary.md")


def write_census_summary(path: Path, summary: CensusSummary):
    post = frontmatter.Post(render_summary_tables(summary), **summary.to_metadata())
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(frontmatter.dumps(post))
        f.write("\n")


def read_census_summary(path: Path) -> CensusSummary:
    post = frontmatter.load(str(path))
    return CensusSummary.from_metadata(post.metadata)


# Census-level checks

def canonical_census_triple(q1: QuadraticForm, q2: QuadraticForm, q3: QuadraticForm) -> Tuple[QuadraticForm, QuadraticForm, QuadraticForm]:
    """
    Move a triple with census Q1 into the frame the census enumerates:
    Q2 becomes its O(Q1)-orbit minimum and the same isometry is applied to Q3.
    """
    group = orthogonal_group(q1)
    q2_min, g = orbit_minimum_transform(group, q2)
    return q1, q2_min, q3.substitute(g)


@dataclass
class TheoremReport:
    """What a full census proves about genus-5 curves of gonality at least 5."""
    records: int
    max_points: int
    pointless: int
    pointless_with_cubic_point: int
    witness_present: Optional[bool]
    checks: List[Tuple[str, Any, Any, bool]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(ok for *_, ok in self.checks)


def derive_theorems(records: Sequence[CurveRecord], expected_max_points: int = 3,
                    require_witness: bool = True, raise_on_failure: bool = True) -> TheoremReport:
    """
    Check that no census curve has more than ``expected_max_points`` rational
    points, that the maximum is attained by the known witness, and that every
    pointless curve has a point of degree 3.

    With ``raise_on_failure=False`` violations are only recorded in
    ``TheoremReport.checks`` and ``passed`` turns False.

    Raises:
        CensusAssertionError: if the census is empty, or on the first violation
            (carrying the offending record) when ``raise_on_failure`` is set
    """
    if not records:
        raise CensusAssertionError("Census is empty")
    top = max(records, key=lambda r: r.n1)
    pointless = [r for r in records if r.n1 == 0]
    without_cubic = [r for r in pointless if r.counts[2] == 0]
    inconsistent = [r for r in records if not r.frobenius_consistent() or not r.weil_consistent()]

    witness_present: Optional[bool] = None
    match: Optional[CurveRecord] = None
    target: Tuple[int, ...] = ()
    if require_witness:
        forms = [QuadraticForm.parse(text) for text in MAXIMAL_WITNESS]
        target = tuple(f.coeffs for f in canonical_census_triple(*forms))
        match = next((r for r in records if r.sort_key() == target), None)
        witness_present = match is not None and match.n1 == expected_max_points

    if raise_on_failure:
        if top.n1 != expected_max_points:
            raise CensusAssertionError(f"Maximum point count is {top.n1}, expected {expected_max_points}",
                                       top.to_fields())
        if without_cubic:
            raise CensusAssertionError("Pointless curve without a point of degree 3", without_cubic[0].to_fields())
        if inconsistent:
            raise CensusAssertionError("Point counts violate Frobenius or Weil constraints",
                                       inconsistent[0].to_fields())
        if require_witness and match is None:
            raise CensusAssertionError("Witness triple with three points is missing from the census",
                                       [f"{c:04x}" for c in target])
        if require_witness and not witness_present:
            raise CensusAssertionError("Witness triple has the wrong point count", match.to_fields())

    report = TheoremReport(
        records=len(records),
        max_points=top.n1,
        pointless=len(pointless),
        pointless_with_cubic_point=len(pointless) - len(without_cubic),
        witness_present=witness_present,
    )
    expectations = [
        ("max-points-gonality-5", expected_max_points, top.n1),
        ("pointless-curves-have-cubic-points", report.pointless, report.pointless_with_cubic_point),
        ("point-counts-consistent", 0, len(inconsistent)),
    ]
    if require_witness:
        expectations.append(("three-point-witness-in-census", True, witness_present))
    report.checks = [(name, expected, actual, expected == actual) for name, expected, actual in expectations]
    logger.info(f"[CENSUS] {len(records)} records: max N1 = {top.n1}, {report.pointless} pointless, "
                f"{report.pointless_with_cubic_point} with cubic points")
    return report
