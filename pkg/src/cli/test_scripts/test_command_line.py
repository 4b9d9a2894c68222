"""
Command Line Tests
==================

Subcommand output in both formats, exit codes, and the verification battery.
"""

import os
from argparse import Namespace

import pytest

from src.census.census_pipeline import CensusConfig, CensusPipeline, census_q1
from src.census.census_records import (
    MAXIMAL_WITNESS, canonical_census_triple, derive_theorems, read_census_file, write_census_file,
)
from src.cli.command_handlers import EXIT_FAILURE, EXIT_OK, EXIT_USAGE
from src.cli.command_router import CommandRouter
from src.cli.main import main
from src.cli.verification import (
    ASSUMED, EXPECTED_CENSUS_CURVES, EXPECTED_HISTOGRAMS, FAIL, PASS, REQUIRES_CENSUS, build_gonality_grid,
    census_entries, run_verification,
)
from src.curves.curvekit import CurveRecord, curve_point_counts
from src.quadratic_forms.quadform import QuadraticForm


def _run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out.splitlines()


def test_classify_type_two(capsys):
    code, lines = _run(capsys, "--format", "lines", "classify", "vw + xy")
    assert code == EXIT_OK
    assert "type\tII" in lines
    points = next(line for line in lines if line.startswith("points\t")).split("\t")
    assert points[1] == "19"
    assert "normal_form\thyperbolic\t4\t" + QuadraticForm.parse("vw + xy").hex_id in lines


def test_classify_text_output(capsys):
    code, lines = _run(capsys, "classify", "x^2")
    assert code == EXIT_OK
    assert any("Type: NotGeomIrreducible" in line for line in lines)


@pytest.mark.parametrize("form", ["", "   ", "vw + q", "vw +"])
def test_unparseable_forms_are_usage_errors(capsys, form):
    code, lines = _run(capsys, "classify", form)
    assert code == EXIT_USAGE
    assert lines[0].startswith("[ERROR]")


def test_unknown_subcommand_is_a_usage_error(capsys):
    assert main(["frobnicate"]) == EXIT_USAGE
    assert main(["verify", "--scope", "genus9"]) == EXIT_USAGE


def test_router_rejects_unknown_commands():
    result = CommandRouter().handle_command("frobnicate", Namespace())
    assert result.exit_code == EXIT_USAGE
    assert "Unknown command: frobnicate" in result.text[0]
    assert "classify" in result.text[0]


def test_count_points_of_the_elliptic_cubic(capsys):
    code, lines = _run(capsys, "--format", "lines", "count", "y^2z + yz^2 + x^3 + xz^2")
    assert code == EXIT_OK
    assert lines == ["count\t1\t5"]


def test_count_over_an_extension(capsys):
    code, lines = _run(capsys, "--format", "lines", "count", "x", "--k", "2")
    assert code == EXIT_OK
    assert lines == ["count\t2\t5"]


def test_count_in_an_unknown_ambient(capsys):
    code, lines = _run(capsys, "count", "x", "--ambient", "P7")
    assert code == EXIT_FAILURE
    assert "Unknown ambient" in lines[0]


def test_orthogonal_group_of_a_split_quadric_surface(capsys):
    code, lines = _run(capsys, "--format", "lines", "orth", "xy + zw", "--n", "4", "--elements")
    assert code == EXIT_OK
    assert lines[0] == "order\t72"
    assert len([line for line in lines if line.startswith("element\t")]) == 72


def test_unknown_orthogonal_group_method(capsys):
    code, lines = _run(capsys, "orth", "xy + zw", "--n", "4", "--method", "guess")
    assert code == EXIT_FAILURE
    assert "Unknown orthogonal group method" in lines[0]


def test_verify_genus_one(capsys):
    code, lines = _run(capsys, "--format", "lines", "verify", "--scope", "genus1")
    assert code == EXIT_OK
    assert "entry\telliptic-cubic-points\t5\t5\tpass" in lines
    assert "table2\t1\t2\t5\telliptic cubic [pass]\tWeil bound\tpass" in lines
    assert lines[-1] == "result\tpass"


def test_genus_three_and_four_batteries():
    report = run_verification("genus3")
    assert report.passed, [e.entry_id for e in report.failures()]
    values = {(c.genus, c.gonality): c.display_value for c in report.table2}
    assert values == {(3, 2): "6", (3, 3): "7", (3, 4): "0"}

    report = run_verification("genus4")
    assert report.passed, [e.entry_id for e in report.failures()]
    cells = {(c.genus, c.gonality): c for c in report.table2}
    assert cells[(4, 3)].upper_status == ASSUMED
    assert [cells[(4, g)].display_value for g in (2, 3, 4, 5)] == ["6", "8", "5", "0"]


def test_genus_five_battery_without_a_census():
    report = run_verification("genus5")
    assert report.passed, [e.entry_id for e in report.failures()]
    cells = {(c.genus, c.gonality): c for c in report.table2}
    assert cells[(5, 3)].display_value == "8"
    assert cells[(5, 4)].upper_status == ASSUMED
    assert cells[(5, 5)].display_value == REQUIRES_CENSUS
    assert cells[(5, 6)].display_value == REQUIRES_CENSUS


def test_incomplete_census_fails_its_entries(tmp_path):
    q1, q2, q3 = canonical_census_triple(*(QuadraticForm.parse(t) for t in MAXIMAL_WITNESS))
    counts = curve_point_counts([q.to_poly() for q in (q1, q2, q3)], 4)
    path = tmp_path / "census.tsv"
    write_census_file(path, [CurveRecord(q1, q2, q3, counts)])

    entries = {e.entry_id: e for e in census_entries(path)}
    assert entries["census-curves-IV"].computed == 1
    assert entries["census-curves-IV"].status == FAIL
    assert entries["census-curves-III"].computed == 0
    assert str(entries["census-max-points"].computed).startswith("error:")
    cells = {(c.genus, c.gonality): c for c in build_gonality_grid(list(entries.values()), [5])}
    assert cells[(5, 5)].upper_status == FAIL


def test_quadratic_form_battery():
    report = run_verification("appendixA")
    assert report.passed, [e.entry_id for e in report.failures()]
    assert report.entry("orthogonal-group-order-III").computed == 1920
    assert report.entry("orbit-representatives-IV").computed == 10
    assert report.entry("witt-search-space").status == PASS


@pytest.mark.slow
def test_full_battery_and_tables(capsys):
    code, lines = _run(capsys, "--format", "lines", "tables")
    assert code == EXIT_OK
    table2 = [line.split("\t") for line in lines]
    assert len(table2) == 15
    assert table2[0][1:4] == ["0", "1", "3"]


def test_pointless_curves_without_cubic_points_fail_their_entry(tmp_path):
    q1, q2, q3 = canonical_census_triple(*(QuadraticForm.parse(t) for t in MAXIMAL_WITNESS))
    witness = CurveRecord(q1, q2, q3, curve_point_counts([q.to_poly() for q in (q1, q2, q3)], 4))
    pointless = CurveRecord(census_q1("III"), QuadraticForm(5, 0x0100), QuadraticForm(5, 0x0020), (0, 2, 0, 6))
    path = tmp_path / "census.tsv"
    write_census_file(path, [witness, pointless])

    entries = {e.entry_id: e for e in census_entries(path)}
    assert entries["census-max-points"].status == PASS
    assert entries["census-three-point-witness"].status == PASS
    cubic = entries["census-pointless-with-cubic-points"]
    assert (cubic.claimed, cubic.computed, cubic.status) == (1, 0, FAIL)


@pytest.mark.slow
def test_full_census_reproduces_the_published_counts(tmp_path, capsys):
    output = tmp_path / "census.tsv"
    config = CensusConfig(q1_choice="both", workers=max(1, min(8, os.cpu_count() or 1)),
                          output_path=output, quiet=True)
    summary = CensusPipeline(config, emit=lambda message: None).run()

    assert not summary.flagged
    for row in summary.rows.values():
        assert row.curves == EXPECTED_CENSUS_CURVES[row.label]
        assert tuple(row.histogram) == EXPECTED_HISTOGRAMS[row.label]

    theorems = derive_theorems(read_census_file(output))
    assert theorems.passed
    assert theorems.max_points == 3
    assert theorems.pointless == theorems.pointless_with_cubic_point == EXPECTED_HISTOGRAMS["III"][0]

    code, lines = _run(capsys, "--format", "lines", "verify", "--scope", "genus5", "--census", str(output))
    assert code == EXIT_OK
    assert "entry\tcensus-three-point-witness\tTrue\tTrue\tpass" in lines
    assert lines[-1] == "result\tpass"
