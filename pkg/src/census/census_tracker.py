"""
Census Progress Tracker
=======================

Makes census runs resumable. Every finished work unit leaves a part file with
its accepted records; a JSON tracking file maps unit ids to the part file's
signature (path, size, mtime) and record counts. A unit counts as done only if
its part file still matches the stored signature.
"""

import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

logger = logging.getLogger("gonality-census")


def get_part_signature(part_path) -> Dict[str, Any]:
    """
    Signature of a part file based on path, size and modification time.

    Args:
        part_path: Path to the part file (string or Path)

    Returns:
        Dict[str, Any]: path, size and mtime of the file
    """
    if isinstance(part_path, str):
        part_path = Path(part_path)
    stat = part_path.stat()
    return {
        "path": str(part_path),
        "size": stat.st_size,
        "mtime": stat.st_mtime,
    }


def load_tracking_data(tracking_file: Path) -> Dict[str, Any]:
    if tracking_file.exists():
        try:
            with open(tracking_file, "r", encoding="utf-8") as f:
                return json.load(f)
        except (json.JSONDecodeError, FileNotFoundError):
            return {}
    return {}


def save_tracking_data(tracking_file: Path, data: Dict[str, Any]):
    """Write the tracking JSON atomically."""
    tracking_file.parent.mkdir(parents=True, exist_ok=True)
    temp = tracking_file.with_suffix(tracking_file.suffix + ".tmp")
    with open(temp, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2, sort_keys=True)
    os.replace(temp, tracking_file)


class CensusTracker:
    """
    Tracks completed census work units and their part files.

    Example usage:
        tracker = CensusTracker(Path("census.tsv.parts"), run_signature={"q1": "both"})
        if not tracker.is_processed(unit_id):
            tracker.write_part(unit_id, rows, flagged)
            tracker.save()
    """

    def __init__(self, tracking_directory: Path, run_signature: Optional[Dict[str, Any]] = None,
                 tracking_file_name: str = "census_progress.json"):
        """
        Args:
            tracking_directory: Directory holding the tracking file and part files
            run_signature: Parameters that must match for earlier progress to be reused
            tracking_file_name: Name of the JSON tracking file
        """
        self.tracking_source = Path(tracking_directory)
        self.tracking_source.mkdir(parents=True, exist_ok=True)
        self.tracking_file = self.tracking_source / tracking_file_name
        self.run_signature = run_signature or {}
        data = load_tracking_data(self.tracking_file)
        if data.get("run_signature", self.run_signature) != self.run_signature:
            logger.warning(f"[TRACKER] Run parameters changed; discarding progress in {self.tracking_file}")
            data = {}
        self.processed_units: Dict[str, Dict[str, Any]] = data.get("units", {})
        logger.info(f"[TRACKER] Initialized with tracking file: {self.tracking_file}")

    def part_path(self, unit_id: str) -> Path:
        return self.tracking_source / f"{unit_id}.part.tsv"

    def is_processed(self, unit_id: str) -> bool:
        """True iff the unit is tracked and its part file is unchanged."""
        stored = self.processed_units.get(unit_id)
        path = self.part_path(unit_id)
        if stored is None or not path.exists():
            return False
        current = get_part_signature(path)
        return (
            stored.get("size") == current["size"]
            and stored.get("mtime") == current["mtime"]
            and stored.get("path") == current["path"]
        )

    def mark_processed(self, unit_id: str, metadata: Optional[Dict[str, Any]] = None):
        record = get_part_signature(self.part_path(unit_id))
        if metadata:
            record["metadata"] = metadata
        self.processed_units[unit_id] = record

    def get_unit_metadata(self, unit_id: str) -> Optional[Dict[str, Any]]:
        stored = self.processed_units.get(unit_id)
        return stored.get("metadata") if stored else None

    def write_part(self, unit_id: str, rows: Sequence[Sequence[str]], flagged: Sequence[Sequence[str]] = (),
                   metadata: Optional[Dict[str, Any]] = None):
        """
        Write a unit's accepted rows (and flagged triples, prefixed by '#')
        through a temporary file, then record it as processed.
        """
        path = self.part_path(unit_id)
        temp = path.with_suffix(".tmp")
        with open(temp, "w", encoding="utf-8") as f:
            for row in rows:
                f.write("\t".join(row) + "\n")
            for triple in flagged:
                f.write("#flagged\t" + "\t".join(triple) + "\n")
        os.replace(temp, path)
        self.mark_processed(unit_id, metadata)

    def read_part(self, unit_id: str) -> Tuple[List[List[str]], List[List[str]]]:
        """(rows, flagged triples) of a processed unit."""
        rows, flagged = [], []
        with open(self.part_path(unit_id), "r", encoding="utf-8") as f:
            for line in f:
                fields = line.rstrip("\n").split("\t")
                if not fields or fields == [""]:
                    continue
                if fields[0] == "#flagged":
                    flagged.append(fields[1:])
                else:
                    rows.append(fields)
        return rows, flagged

    def save(self):
        save_tracking_data(self.tracking_file, {"run_signature": self.run_signature, "units": self.processed_units})

    def get_stats(self) -> Dict[str, int]:
        return {
            "total_processed": len(self.processed_units),
            "tracking_file_exists": self.tracking_file.exists(),
        }

    def clear(self):
        """Drop all progress, including part files."""
        for part in self.tracking_source.glob("*.part.tsv"):
            part.unlink()
        self.processed_units.clear()
        if self.tracking_file.exists():
            self.tracking_file.unlink()
