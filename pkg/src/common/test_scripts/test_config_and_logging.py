"""
Settings and Script Logging Tests
=================================
"""

from pathlib import Path

import pytest

from src.common.config import DEFAULT_CHUNK_SIZE, default_step_budget, load_census_settings
from src.common.errors import ConfigurationError
from src.common.logging_utils import setup_script_logging


def test_defaults_without_environment(monkeypatch):
    for name in ("GONALITY_CENSUS_JOBS", "GONALITY_CENSUS_CHUNK_SIZE", "GONALITY_GROEBNER_STEP_BUDGET",
                 "GONALITY_TRACKING_DIRECTORY"):
        monkeypatch.delenv(name, raising=False)
    settings = load_census_settings()
    assert settings.jobs == 1
    assert settings.chunk_size == DEFAULT_CHUNK_SIZE
    assert settings.tracking_directory is None


def test_environment_overrides(monkeypatch, tmp_path):
    monkeypatch.setenv("GONALITY_CENSUS_JOBS", "4")
    monkeypatch.setenv("GONALITY_GROEBNER_STEP_BUDGET", "500")
    monkeypatch.setenv("GONALITY_TRACKING_DIRECTORY", str(tmp_path))
    settings = load_census_settings()
    assert settings.jobs == 4
    assert settings.step_budget == 500
    assert settings.tracking_directory == tmp_path
    assert default_step_budget() == 500


@pytest.mark.parametrize("raw", ["four", "0", "-3"])
def test_malformed_numbers_are_configuration_errors(monkeypatch, raw):
    monkeypatch.setenv("GONALITY_CENSUS_JOBS", raw)
    with pytest.raises(ConfigurationError):
        load_census_settings()


def test_script_logger_strips_ansi_and_writes_footer(monkeypatch, tmp_path, capsys):
    monkeypatch.setenv("GONALITY_LOG_DIRECTORY", str(tmp_path))
    script_logger = setup_script_logging(log_file="run.log", script_path="census")
    script_logger.print_and_log("\x1b[32m✅ done\x1b[0m")
    script_logger.log("file only")
    script_logger.close_log()

    assert "done" in capsys.readouterr().out
    text = Path(tmp_path / "run.log").read_text(encoding="utf-8")
    assert "Gonality Census Execution Log" in text
    assert "✅ done" in text
    assert "\x1b[" not in text
    assert "file only" in text
    assert "Script completed at" in text


def test_script_logger_without_file_only_prints(capsys):
    script_logger = setup_script_logging()
    script_logger.print_and_log("hello")
    script_logger.log("ignored")
    script_logger.close_log()
    assert capsys.readouterr().out == "hello\n"
