"""
Census Pipeline Tests
=====================

Form sets, the pencil filter, the per-triple decision and a census run
restricted to the work unit holding the three-point curve.
"""

import random

import numpy as np
import pytest

from src.census import census_pipeline
from src.census.census_pipeline import (
    CensusConfig, CensusPipeline, WorkUnit, WorkUnitConfig, _candidate_codes, accept_triple,
    allowed_types, build_A, build_B, census_q1, partition_work, pencil_filter, pencil_filter_mask,
)
from src.census.census_records import (
    MAXIMAL_WITNESS, canonical_census_triple, read_census_file, read_census_summary, summary_path_for,
)
from src.census.point_ladder import PointLadder
from src.common.errors import ConfigurationError
from src.curves.curvekit import curve_point_counts
from src.quadratic_forms.quadform import FormType, QuadraticForm, get_type_table


def _canonical_witness():
    return canonical_census_triple(*(QuadraticForm.parse(t) for t in MAXIMAL_WITNESS))


@pytest.mark.parametrize("label,a_size,b_size", [("III", 17, 19096), ("IV", 10, 13888)])
def test_form_sets(label, a_size, b_size):
    q1 = census_q1(label)
    assert len(build_A(q1)) == a_size
    assert len(build_B(q1)) == b_size


def test_allowed_types():
    assert allowed_types(census_q1("III")) == (FormType.III, FormType.IV)
    assert allowed_types(census_q1("IV")) == (FormType.IV,)
    with pytest.raises(ConfigurationError):
        allowed_types(QuadraticForm.parse("vw + xy"))


def test_witness_lies_in_the_census_frame():
    q1, q2, q3 = _canonical_witness()
    assert q1 == census_q1("IV")
    assert q2 in build_A(q1)
    assert pencil_filter(q1, q2, q3)


def test_dependent_triples_fail_the_filter():
    q1, q2, _ = _canonical_witness()
    assert not pencil_filter(q1, q2, q2)
    assert not pencil_filter(q1, q2, QuadraticForm(5, q1.coeffs ^ q2.coeffs))


def test_vectorized_filter_matches_scalar_filter():
    table = get_type_table()
    q1 = census_q1("III")
    a_forms = build_A(q1)
    candidates = _candidate_codes(q1.coeffs)
    rng = random.Random(11)
    sample = np.array(sorted(rng.sample(range(len(candidates)), 400)))
    for q2 in a_forms[:4]:
        chosen = candidates[sample]
        mask = pencil_filter_mask(q1.coeffs, q2.coeffs, chosen, table)
        expected = [pencil_filter(q1, q2, QuadraticForm(5, int(c)), table) for c in chosen]
        assert mask.tolist() == expected


def test_witness_is_accepted_with_three_points():
    q1, q2, q3 = _canonical_witness()
    record = accept_triple(q1, q2, q3)
    assert record is not None
    assert record.n1 == 3
    assert record.counts == curve_point_counts([q.to_poly() for q in (q1, q2, q3)], 4)


def test_surface_is_rejected():
    q1, q2, _ = _canonical_witness()
    assert accept_triple(q1, q2, q2) is None


def test_point_ladder_counts_match_direct_counts():
    q1, q2, q3 = _canonical_witness()
    ladder = PointLadder.for_quadric(q1).restrict(q2)
    assert ladder.size(1) == curve_point_counts([q1.to_poly(), q2.to_poly()], 4, degrees=(1,))[0]
    direct = curve_point_counts([q.to_poly() for q in (q1, q2, q3)], 4)
    assert ladder.counts(q3) == direct
    assert [points.shape[0] for points, _ in ladder.curve_points(q3)] == list(direct)


def test_work_partition():
    q1 = census_q1("IV")
    a_forms = [QuadraticForm(5, 0x0101), QuadraticForm(5, 0x0202)]
    units = partition_work(q1, a_forms, 4500, WorkUnitConfig(chunk_size=2000))
    assert len(units) == 6
    assert units[0].unit_id == f"{q1.hex_id}-0101-00000"
    assert units[2].stop == 4500


def test_config_validation(tmp_path):
    with pytest.raises(ConfigurationError):
        CensusConfig(q1_choice="5")
    with pytest.raises(ConfigurationError):
        CensusConfig(workers=0)
    config = CensusConfig(q1_choice="4", output_path=tmp_path / "c.tsv")
    assert config.labels == ("IV",)
    assert config.tracking_path() == tmp_path / "c.tsv.parts"


def test_config_overrides_skip_none(monkeypatch):
    monkeypatch.setenv("GONALITY_CENSUS_JOBS", "3")
    config = CensusConfig.from_environment(workers=None, chunk_size=50)
    assert config.workers == 3
    assert config.chunk_size == 50


def test_census_run_on_the_witness_unit(tmp_path, monkeypatch):
    q1, q2, q3 = _canonical_witness()
    start = int(np.searchsorted(_candidate_codes(q1.coeffs), q3.coeffs))
    unit = WorkUnit(q1.coeffs, q2.coeffs, start, start + 1)
    monkeypatch.setattr(census_pipeline, "partition_work", lambda *args: [unit])

    output = tmp_path / "census.tsv"
    messages = []
    config = CensusConfig(q1_choice="IV", output_path=output, quiet=True)
    summary = CensusPipeline(config, emit=messages.append).run()

    row = summary.rows[q1.hex_id]
    assert (row.group_order, row.a_size, row.b_size) == (720, 10, 13888)
    assert row.curves == 1
    assert row.histogram == [0, 0, 0, 1, 0]
    records = read_census_file(output)
    assert [r.sort_key() for r in records] == [(q1.coeffs, q2.coeffs, q3.coeffs)]
    assert read_census_summary(summary_path_for(output)).rows[q1.hex_id].curves == 1

    resumed = []
    CensusPipeline(CensusConfig(q1_choice="IV", output_path=output, resume=True, quiet=True),
                   emit=resumed.append).run()
    assert any("(1 resumed)" in m for m in resumed)
    assert len(read_census_file(output)) == 1


def test_census_file_does_not_depend_on_the_worker_count(tmp_path, monkeypatch):
    q1, q2, q3 = _canonical_witness()
    codes = _candidate_codes(q1.coeffs)
    start = int(np.searchsorted(codes, q3.coeffs))
    first = max(0, min(start - 10, len(codes) - 20))
    units = [WorkUnit(q1.coeffs, q2.coeffs, s, s + 5) for s in range(first, first + 20, 5)]
    monkeypatch.setattr(census_pipeline, "partition_work", lambda *args: units)

    outputs = []
    for workers in (1, 3):
        output = tmp_path / f"workers{workers}" / "census.tsv"
        config = CensusConfig(q1_choice="IV", workers=workers, output_path=output, quiet=True)
        CensusPipeline(config, emit=lambda message: None).run()
        outputs.append(output.read_bytes())

    assert outputs[0] == outputs[1]
    assert any(r.sort_key() == (q1.coeffs, q2.coeffs, q3.coeffs)
               for r in read_census_file(tmp_path / "workers3" / "census.tsv"))
