"""
Census Pipeline
===============

The exhaustive search for genus-5 curves over F_2 of gonality at least 5,
organised in three phases:

1. Form Preparation Phase - type table, O(Q1), orbit representatives A(Q1), candidates B(Q1)
2. Candidate Scan Phase - pencil filter, smoothness and point counts for every (Q2, Q3) in A x B
3. Record Write Phase - merge, sort and write the census file and its summary

Each census Q1 is split into work units of one Q2 and a slice of B. Units are
deterministic, run in any order on any number of processes, and are tracked so
an interrupted run resumes where it stopped.
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from src.common.config import load_census_settings
from src.common.errors import CensusAssertionError, ConfigurationError, GroebnerBudgetExceeded
from src.census.census_records import (
    CensusSummary, Q1Summary, summarize_records, summary_path_for, write_census_file, write_census_summary,
)
from src.census.census_tracker import CensusTracker
from src.census.point_ladder import PointLadder
from src.curves.curvekit import CurveRecord, pencil_members
from src.curves.groebner import smooth_curve_check
from src.quadratic_forms.group_strategies import get_orthogonal_group_strategy
from src.quadratic_forms.orthgroup import OrthGroup, orbit_representatives, orthogonal_group, span_discard
from src.quadratic_forms.quadform import FormType, QuadraticForm, TypeTable, get_type_table

logger = logging.getLogger("gonality-census")

CENSUS_Q1: Dict[str, str] = {
    "III": "vw + x^2 + xy + y^2",
    "IV": "vw + xy + z^2",
}

Q1_CHOICES: Dict[str, Tuple[str, ...]] = {
    "3": ("III",),
    "III": ("III",),
    "4": ("IV",),
    "IV": ("IV",),
    "both": ("III", "IV"),
}

CANONICAL_GENUS = 5
CANONICAL_DEGREE = 8


@dataclass
class CensusConfig:
    """Parameters of one census run."""
    q1_choice: str = "both"
    workers: int = 1
    output_path: Path = Path("census.tsv")
    resume: bool = False
    chunk_size: int = 2000
    step_budget: Optional[int] = None
    tracking_directory: Optional[Path] = None
    log_file: Optional[Path] = None
    quiet: bool = False

    def __post_init__(self):
        if self.q1_choice not in Q1_CHOICES:
            raise ConfigurationError(
                f"Unknown Q1 choice: {self.q1_choice}. Supported: {', '.join(Q1_CHOICES)}"
            )
        if self.workers < 1:
            raise ConfigurationError(f"workers must be >= 1, got {self.workers}")
        if self.chunk_size < 1:
            raise ConfigurationError(f"chunk_size must be >= 1, got {self.chunk_size}")
        self.output_path = Path(self.output_path)

    @classmethod
    def from_environment(cls, **overrides) -> "CensusConfig":
        """Defaults from the environment settings, then explicit overrides (None values ignored)."""
        settings = load_census_settings()
        values = {
            "workers": settings.jobs,
            "chunk_size": settings.chunk_size,
            "step_budget": settings.step_budget,
            "tracking_directory": settings.tracking_directory,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    @property
    def labels(self) -> Tuple[str, ...]:
        return Q1_CHOICES[self.q1_choice]

    def tracking_path(self) -> Path:
        if self.tracking_directory is not None:
            return Path(self.tracking_directory)
        return self.output_path.with_name(self.output_path.name + ".parts")

    def run_signature(self) -> Dict[str, object]:
        return {"q1": list(self.labels), "chunk_size": self.chunk_size, "step_budget": self.step_budget}


def census_q1(label: str) -> QuadraticForm:
    return QuadraticForm.parse(CENSUS_Q1[label])


def allowed_types(q1: QuadraticForm, table: Optional[TypeTable] = None) -> Tuple[FormType, ...]:
    """Types a span member may have: type(Q1) and above."""
    table = table or get_type_table()
    floor = table.type_of(q1.coeffs)
    if floor not in (FormType.III, FormType.IV):
        raise ConfigurationError(f"Census Q1 must have type III or IV, {q1} has type {floor.label}")
    return tuple(t for t in (FormType.III, FormType.IV) if t >= floor)


def build_A(q1: QuadraticForm, group: Optional[OrthGroup] = None) -> List[QuadraticForm]:
    """Orbit minima of O(Q1) on the allowed-type forms, minus those whose span with Q1 leaves the allowed types."""
    table = get_type_table()
    group = group or orthogonal_group(q1)
    allowed = allowed_types(q1, table)
    pool = [QuadraticForm(5, int(c)) for c in table.forms_of(allowed)]
    partition = orbit_representatives(group, pool)
    return span_discard(q1, partition.representatives, allowed, table)


def build_B(q1: QuadraticForm) -> List[QuadraticForm]:
    table = get_type_table()
    return [QuadraticForm(5, int(c)) for c in table.forms_of(allowed_types(q1, table))]


def pencil_filter(q1: QuadraticForm, q2: QuadraticForm, q3: QuadraticForm,
                  table: Optional[TypeTable] = None) -> bool:
    """True iff the three forms are independent and all seven span members have type >= type(Q1)."""
    table = table or get_type_table()
    members = pencil_members(q1, q2, q3)
    if 0 in members or len(set(members)) != 7:
        return False
    floor = int(table.codes[q1.coeffs])
    return all(int(table.codes[m]) >= floor for m in members)


def pencil_filter_mask(q1c: int, q2c: int, candidates: np.ndarray, table: TypeTable) -> np.ndarray:
    """``pencil_filter`` over an array of Q3 coefficient vectors at once."""
    codes = table.codes
    floor = int(codes[q1c])
    span = (0, q1c, q2c, q1c ^ q2c)
    if q2c in (0, q1c) or any(int(codes[c]) < floor for c in span[1:]):
        return np.zeros(candidates.shape[0], dtype=bool)
    mask = np.ones(candidates.shape[0], dtype=bool)
    for s in span:
        shifted = candidates ^ np.uint16(s)
        mask &= shifted != 0
        mask &= codes[shifted] >= floor
    return mask


# Work units

@dataclass(frozen=True)
class WorkUnitConfig:
    """How candidate lists are chunked into work units."""
    chunk_size: int = 2000


@dataclass(frozen=True)
class WorkUnit:
    """All Q3 in B(Q1)[start:stop] against one Q2."""
    q1: int
    q2: int
    start: int
    stop: int

    @property
    def unit_id(self) -> str:
        return f"{self.q1:04x}-{self.q2:04x}-{self.start:05d}"


def partition_work(q1: QuadraticForm, a_forms: Sequence[QuadraticForm], b_size: int,
                   config: WorkUnitConfig = WorkUnitConfig()) -> List[WorkUnit]:
    units = []
    for q2 in a_forms:
        for start in range(0, b_size, config.chunk_size):
            units.append(WorkUnit(q1.coeffs, q2.coeffs, start, min(start + config.chunk_size, b_size)))
    return units


@dataclass
class UnitResult:
    """Output of one work unit, as census-file fields."""
    unit_id: str
    rows: List[List[str]]
    flagged: List[List[str]]
    candidates: int
    passed_filter: int
    elapsed: float


_WORKER_STATE: Dict[str, object] = {}


def _init_worker(step_budget: Optional[int] = None):
    """Per-process setup: step budget plus a warm type table."""
    _WORKER_STATE["step_budget"] = step_budget
    get_type_table()


@lru_cache(maxsize=2)
def _candidate_codes(q1c: int) -> np.ndarray:
    return get_type_table().forms_of(allowed_types(QuadraticForm(5, q1c)))


@lru_cache(maxsize=4)
def _ladder(q1c: int, q2c: int) -> PointLadder:
    return PointLadder.for_quadric(QuadraticForm(5, q1c)).restrict(QuadraticForm(5, q2c))


def accept_triple(q1: QuadraticForm, q2: QuadraticForm, q3: QuadraticForm,
                  ladder: Optional[PointLadder] = None, step_budget: Optional[int] = None) -> Optional[CurveRecord]:
    """
    The census decision for one triple that already passed the pencil filter.

    Returns the record with N1..N4 when V(q1, q2, q3) is a smooth curve, None
    otherwise. Raises GroebnerBudgetExceeded when a basis outgrows the budget.
    """
    ladder = ladder or _ladder(q1.coeffs, q2.coeffs)
    verdict = smooth_curve_check(q1, q2, q3, sweep_points=ladder.curve_points(q3), step_budget=step_budget)
    if not verdict.is_smooth_curve:
        return None
    record = CurveRecord(q1, q2, q3, ladder.counts(q3), verdict)
    if verdict.degree != CANONICAL_DEGREE or verdict.arithmetic_genus != CANONICAL_GENUS:
        raise CensusAssertionError(
            f"Smooth curve with degree {verdict.degree} and genus {verdict.arithmetic_genus}", record.to_fields()
        )
    if not record.weil_consistent(CANONICAL_GENUS):
        raise CensusAssertionError("Point counts violate the Weil bound", record.to_fields())
    return record


def scan_unit(unit: WorkUnit) -> UnitResult:
    """Run one work unit; safe to call in a worker process or in-process."""
    start_time = time.perf_counter()
    table = get_type_table()
    step_budget = _WORKER_STATE.get("step_budget")
    q1, q2 = QuadraticForm(5, unit.q1), QuadraticForm(5, unit.q2)
    candidates = _candidate_codes(unit.q1)[unit.start:unit.stop]
    survivors = candidates[pencil_filter_mask(unit.q1, unit.q2, candidates, table)]
    ladder = _ladder(unit.q1, unit.q2)
    rows, flagged = [], []
    for c3 in survivors:
        q3 = QuadraticForm(5, int(c3))
        try:
            record = accept_triple(q1, q2, q3, ladder=ladder, step_budget=step_budget)
        except GroebnerBudgetExceeded as e:
            logger.warning(f"[CENSUS] Flagged {q1.hex_id} {q2.hex_id} {q3.hex_id}: {e}")
            flagged.append([q1.hex_id, q2.hex_id, q3.hex_id])
            continue
        if record is not None:
            rows.append(record.to_fields())
    return UnitResult(
        unit_id=unit.unit_id,
        rows=rows,
        flagged=flagged,
        candidates=int(candidates.shape[0]),
        passed_filter=int(survivors.shape[0]),
        elapsed=time.perf_counter() - start_time,
    )


# Phases

@dataclass
class PreparedQ1:
    """Everything the scan needs for one census Q1."""
    label: str
    q1: QuadraticForm
    group: OrthGroup
    a_forms: List[QuadraticForm]
    b_size: int
    preparation_time: float

    def summary_row(self) -> Q1Summary:
        return Q1Summary(
            q1=self.q1.hex_id,
            label=self.label,
            group_order=self.group.order,
            a_size=len(self.a_forms),
            b_size=self.b_size,
        )


class FormPreparationPhase:
    """
    Phase 1: Form Preparation

    Classifies all forms, computes O(Q1) with the chosen strategy and builds
    A(Q1) and B(Q1).
    """

    def __init__(self, method: str = "transitivity"):
        self.strategy = get_orthogonal_group_strategy(method)

    def prepare(self, label: str) -> PreparedQ1:
        start = time.perf_counter()
        q1 = census_q1(label)
        get_type_table()
        group = self.strategy.compute(q1)
        a_forms = build_A(q1, group)
        b_size = len(build_B(q1))
        logger.info(f"[CENSUS] Q1 {label}: |O| = {group.order}, #A = {len(a_forms)}, #B = {b_size}")
        return PreparedQ1(label, q1, group, a_forms, b_size, time.perf_counter() - start)

    def print_preparation_summary(self, prepared: Sequence[PreparedQ1], emit: Callable[[str], None] = print):
        emit(f"\n🧮 Form Preparation Phase Complete")
        emit(f"   Strategy: {self.strategy.get_strategy_name()}")
        for p in prepared:
            emit(f"   Q1 = {p.q1} (type {p.label})")
            emit(f"     #O(Q1): {p.group.order}")
            emit(f"     #A(Q1): {len(p.a_forms)}")
            emit(f"     #B(Q1): {p.b_size}")
            emit(f"     Preparation time: {p.preparation_time:.2f} seconds")


@dataclass
class ScanResult:
    records: List[CurveRecord] = field(default_factory=list)
    flagged: List[List[str]] = field(default_factory=list)
    units_total: int = 0
    units_resumed: int = 0
    candidates: int = 0
    passed_filter: int = 0
    elapsed_by_q1: Dict[str, float] = field(default_factory=dict)
    scan_time: float = 0.0


class CandidateScanPhase:
    """
    Phase 2: Candidate Scan

    Runs every work unit not already recorded by the tracker, in a process pool
    when more than one worker is requested. Finished units are written to the
    tracker from this process only.
    """

    def __init__(self, workers: int = 1, step_budget: Optional[int] = None, quiet: bool = False):
        self.workers = workers
        self.step_budget = step_budget
        self.quiet = quiet

    def _absorb(self, tracker: CensusTracker, unit_result: UnitResult):
        tracker.write_part(unit_result.unit_id, unit_result.rows, unit_result.flagged, metadata={
            "records": len(unit_result.rows),
            "candidates": unit_result.candidates,
            "passed_filter": unit_result.passed_filter,
            "elapsed": round(unit_result.elapsed, 3),
        })
        tracker.save()

    def _collect(self, result: ScanResult, tracker: CensusTracker, unit: WorkUnit):
        rows, flagged = tracker.read_part(unit.unit_id)
        metadata = tracker.get_unit_metadata(unit.unit_id) or {}
        result.records.extend(CurveRecord.from_fields(r) for r in rows)
        result.flagged.extend(flagged)
        result.candidates += int(metadata.get("candidates", 0))
        result.passed_filter += int(metadata.get("passed_filter", 0))
        label = f"{unit.q1:04x}"
        result.elapsed_by_q1[label] = result.elapsed_by_q1.get(label, 0.0) + float(metadata.get("elapsed", 0.0))

    def scan(self, units: Sequence[WorkUnit], tracker: CensusTracker) -> ScanResult:
        start = time.perf_counter()
        result = ScanResult(units_total=len(units))
        pending = [u for u in units if not tracker.is_processed(u.unit_id)]
        result.units_resumed = len(units) - len(pending)
        if result.units_resumed:
            logger.info(f"[CENSUS] Resuming: {result.units_resumed} of {len(units)} units already done")

        progress = tqdm(total=len(pending), desc="Census units", unit="unit", disable=self.quiet)
        if self.workers == 1 or len(pending) <= 1:
            _init_worker(self.step_budget)
            for unit in pending:
                self._absorb(tracker, scan_unit(unit))
                progress.update(1)
        else:
            with ProcessPoolExecutor(max_workers=self.workers, initializer=_init_worker,
                                     initargs=(self.step_budget,)) as executor:
                futures = [executor.submit(scan_unit, unit) for unit in pending]
                for future in as_completed(futures):
                    self._absorb(tracker, future.result())
                    progress.update(1)
        progress.close()

        for unit in units:
            self._collect(result, tracker, unit)
        result.scan_time = time.perf_counter() - start
        return result

    def print_scan_summary(self, result: ScanResult, emit: Callable[[str], None] = print):
        emit(f"\n🔎 Candidate Scan Phase Complete")
        emit(f"   Workers: {self.workers}")
        emit(f"   Work units: {result.units_total} ({result.units_resumed} resumed)")
        emit(f"   Candidate triples: {result.candidates}")
        emit(f"   Passed pencil filter: {result.passed_filter}")
        emit(f"   Smooth curves: {len(result.records)}")
        emit(f"   Scan time: {result.scan_time:.2f} seconds")
        if result.flagged:
            emit(f"   Flagged for review: {len(result.flagged)}")
            for triple in result.flagged[:5]:
                emit(f"     - {' '.join(triple)}")
            if len(result.flagged) > 5:
                emit(f"     ... and {len(result.flagged) - 5} more")


class RecordWritePhase:
    """
    Phase 3: Record Write

    Sorts the merged records, writes the census file and its summary sidecar.
    """

    def write(self, output_path: Path, records: Sequence[CurveRecord], summary: CensusSummary) -> Path:
        written = write_census_file(output_path, records)
        sidecar = summary_path_for(output_path)
        write_census_summary(sidecar, summary)
        logger.info(f"[CENSUS] Wrote {written} records to {output_path} and summary to {sidecar}")
        return sidecar

    def print_write_summary(self, output_path: Path, summary: CensusSummary, emit: Callable[[str], None] = print):
        emit(f"\n💾 Record Write Phase Complete")
        emit(f"   Census file: {output_path}")
        emit(f"   Summary: {summary_path_for(output_path)}")
        for key in sorted(summary.rows):
            row = summary.rows[key]
            histogram = ", ".join(str(c) for c in row.histogram)
            emit(f"   Type {row.label}: {row.curves} curves, points (0,1,2,3,>=4) = ({histogram})")


class CensusPipeline:
    """Runs the three phases for the Q1 forms selected in the config."""

    def __init__(self, config: CensusConfig, emit: Callable[[str], None] = print, method: str = "transitivity"):
        self.config = config
        self.emit = emit
        self.preparation_phase = FormPreparationPhase(method)
        self.scan_phase = CandidateScanPhase(config.workers, config.step_budget, config.quiet)
        self.write_phase = RecordWritePhase()
        self.tracker = CensusTracker(config.tracking_path(), run_signature=config.run_signature())

    def run(self) -> CensusSummary:
        self.emit("🚀 Starting Gonality Census")
        self.emit("=" * 60)
        if not self.config.resume:
            self.tracker.clear()

        self.emit("\n🧮 Phase 1: Form Preparation")
        prepared = [self.preparation_phase.prepare(label) for label in self.config.labels]
        self.preparation_phase.print_preparation_summary(prepared, self.emit)

        self.emit("\n🔎 Phase 2: Candidate Scan")
        unit_config = WorkUnitConfig(self.config.chunk_size)
        units = [u for p in prepared for u in partition_work(p.q1, p.a_forms, p.b_size, unit_config)]
        scan = self.scan_phase.scan(units, self.tracker)
        self.scan_phase.print_scan_summary(scan, self.emit)

        self.emit("\n💾 Phase 3: Record Write")
        rows = {p.q1.hex_id: p.summary_row() for p in prepared}
        summary = summarize_records(scan.records, rows, scan.flagged)
        for p in prepared:
            row = rows[p.q1.hex_id]
            row.wall_time_seconds = p.preparation_time + scan.elapsed_by_q1.get(p.q1.hex_id, 0.0)
        self.write_phase.write(self.config.output_path, scan.records, summary)
        self.write_phase.print_write_summary(self.config.output_path, summary, self.emit)

        self.emit("\n✅ Census Finished")
        return summary


def run_census(config: CensusConfig, emit: Callable[[str], None] = print) -> CensusSummary:
    return CensusPipeline(config, emit).run()
