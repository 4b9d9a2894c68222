"""
Census Settings
===============

Environment-driven defaults for the census and the Gröbner engine.
Values come from the process environment, optionally seeded from a ``.env`` file.
"""

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

from src.common.errors import ConfigurationError

load_dotenv()

DEFAULT_JOBS = 1
DEFAULT_CHUNK_SIZE = 2000
DEFAULT_STEP_BUDGET = 1_000_000
DEFAULT_LOG_DIRECTORY = "census_logs"


@dataclass(frozen=True)
class CensusSettings:
    """Snapshot of the environment configuration."""
    jobs: int = DEFAULT_JOBS
    chunk_size: int = DEFAULT_CHUNK_SIZE
    step_budget: int = DEFAULT_STEP_BUDGET
    tracking_directory: Optional[Path] = None
    log_directory: Path = Path(DEFAULT_LOG_DIRECTORY)


def _int_from_env(name: str, default: int, minimum: int = 1) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}")
    if value < minimum:
        raise ConfigurationError(f"{name} must be >= {minimum}, got {value}")
    return value


def load_census_settings() -> CensusSettings:
    """
    Read census settings from the environment.

    Recognised variables:
        GONALITY_CENSUS_JOBS: default worker count
        GONALITY_CENSUS_CHUNK_SIZE: candidate forms per work unit
        GONALITY_GROEBNER_STEP_BUDGET: reduction steps per Gröbner basis
        GONALITY_TRACKING_DIRECTORY: where census progress is tracked
        GONALITY_LOG_DIRECTORY: directory for script logs

    Raises:
        ConfigurationError: if a numeric variable is malformed or out of range
    """
    tracking = os.getenv("GONALITY_TRACKING_DIRECTORY")
    return CensusSettings(
        jobs=_int_from_env("GONALITY_CENSUS_JOBS", DEFAULT_JOBS),
        chunk_size=_int_from_env("GONALITY_CENSUS_CHUNK_SIZE", DEFAULT_CHUNK_SIZE),
        step_budget=_int_from_env("GONALITY_GROEBNER_STEP_BUDGET", DEFAULT_STEP_BUDGET),
        tracking_directory=Path(tracking) if tracking else None,
        log_directory=Path(os.getenv("GONALITY_LOG_DIRECTORY", DEFAULT_LOG_DIRECTORY)),
    )


def default_step_budget() -> int:
    """Step budget for a single Gröbner basis computation."""
    return _int_from_env("GONALITY_GROEBNER_STEP_BUDGET", DEFAULT_STEP_BUDGET)
