"""
Script Logging Utility
======================

Duplicates the human-facing console output of long-running commands (the
census above all) into a timestamped log file. The file copy has ANSI codes
stripped and every line prefixed with a UTC time; console output is unchanged.

Usage:
    from src.common.logging_utils import setup_script_logging

    script_logger = setup_script_logging(script_path=__file__)
    script_logger.print_and_log("🚀 Starting Gonality Census")
    ...
    script_logger.close_log()
"""

import re
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from src.common.config import load_census_settings

ANSI_ESCAPE = re.compile(r"\x1B(?:[@-Z\\-_]|\[[0-?]*[ -/]*[@-~])")


def log_directory() -> Path:
    return load_census_settings().log_directory


class ScriptLogger:
    """
    Console plus file output for a single script run.
    Without a log file it behaves like print().
    """

    def __init__(self, log_file: Optional[str] = None, script_path: Optional[str] = None):
        """
        Args:
            log_file: Path to log file. If None and script_path is given, a name
                is generated from the script name and a UTC timestamp.
            script_path: Path to the script being logged.
        """
        if log_file is None and script_path:
            timestamp = datetime.now(timezone.utc).strftime("%Y%m%d_%H%M%S_UTC")
            self.log_file = str(log_directory() / f"{Path(script_path).stem}_{timestamp}.log")
        else:
            self.log_file = log_file

        if self.log_file:
            log_path = Path(self.log_file)
            log_path.parent.mkdir(parents=True, exist_ok=True)
            with open(log_path, "a", encoding="utf-8") as f:
                f.write(f"\n{'=' * 80}\n")
                f.write("Gonality Census Execution Log\n")
                f.write(f"Script: {script_path or 'Unknown'}\n")
                f.write(f"Started: {datetime.now(timezone.utc).isoformat()}\n")
                f.write(f"{'=' * 80}\n")

    def log(self, message: str, end: str = "\n"):
        """Write a message to the log file only."""
        if not self.log_file:
            return
        try:
            with open(self.log_file, "a", encoding="utf-8") as f:
                timestamp = datetime.now(timezone.utc).strftime("%H:%M:%S UTC")
                f.write(f"{timestamp} | {self._clean_message(message)}{end}")
        except OSError as e:
            print(f"⚠️  Log file write failed: {e}")

    def print_and_log(self, message: str, end: str = "\n"):
        print(message, end=end)
        self.log(message, end=end)

    def _clean_message(self, message: str) -> str:
        return ANSI_ESCAPE.sub("", message)

    def close_log(self):
        """Close the log with a footer."""
        if not self.log_file:
            return
        try:
            with open(self.log_file, "a", encoding="utf-8") as f:
                f.write(f"\nScript completed at {datetime.now(timezone.utc).isoformat()}\n")
                f.write(f"{'=' * 80}\n\n")
        except OSError:
            pass


def setup_script_logging(log_file: Optional[str] = None, script_path: Optional[str] = None) -> ScriptLogger:
    """
    Set up a ScriptLogger. A relative ``log_file`` is placed in the log
    directory (GONALITY_LOG_DIRECTORY, default ./census_logs).
    """
    if log_file and not Path(log_file).is_absolute():
        log_file = str(log_directory() / log_file)
    return ScriptLogger(log_file=log_file, script_path=script_path)
