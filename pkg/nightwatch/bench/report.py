# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Benchmark reports.

CSV and JSON carry the same five keys in a fixed order; absent values are
empty CSV cells and JSON nulls. Floats are written with repr() so a report
parses back to identical records. Rows keep input order.
"""

import csv
import io
import json
from pathlib import Path
from typing import Iterable, List, Optional, Union

from ..logging import get_logger
from .models import BenchRecord, GroundTruth

logger = get_logger(__name__, component="bench")

REPORT_COLUMNS = ("method", "total_seconds", "fps", "first_detection_frame", "seconds_before_crash")
REPORT_FORMATS = ("csv", "json")

# Rounded figures published for the 24 fps, crash-at-95 reference sequence,
# keyed by the frame they were measured from.
ROUNDED_REFERENCE = {74: 0.86, 73: 0.91, 60: 1.45}


def _resolve_format(path: Path, fmt: Optional[str]) -> str:
    fmt = (fmt or path.suffix.lstrip(".") or "csv").lower()
    if fmt not in REPORT_FORMATS:
        raise ValueError(f"Unknown report format '{fmt}', expected one of {REPORT_FORMATS}")
    return fmt


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def format_csv(records: Iterable[BenchRecord]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(REPORT_COLUMNS)
    for record in records:
        writer.writerow([_cell(getattr(record, column)) for column in REPORT_COLUMNS])
    return buffer.getvalue()


def format_json(records: Iterable[BenchRecord]) -> str:
    rows = [{column: getattr(r, column) for column in REPORT_COLUMNS} for r in records]
    return json.dumps(rows, indent=2) + "\n"


def write_report(records: Iterable[BenchRecord], path: Union[str, Path],
                 fmt: Optional[str] = None) -> Path:
    """Write records as CSV or JSON (format from `fmt`, else the suffix, else CSV)."""
    path = Path(path)
    fmt = _resolve_format(path, fmt)
    records = list(records)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = format_csv(records) if fmt == "csv" else format_json(records)
    path.write_text(text, encoding="utf-8")
    logger.info(f"Report written to {path}", extra={"extra_fields": {"rows": len(records), "format": fmt}})
    return path


def _record_from_cells(cells: dict) -> BenchRecord:
    def number(key, kind):
        value = cells.get(key)
        if value is None or value == "":
            return None
        return kind(value)

    return BenchRecord(
        method=cells["method"],
        total_seconds=number("total_seconds", float),
        fps=number("fps", float),
        first_detection_frame=number("first_detection_frame", int),
        seconds_before_crash=number("seconds_before_crash", float),
    )


def read_report(path: Union[str, Path], fmt: Optional[str] = None) -> List[BenchRecord]:
    """
    Parse a report written by write_report.

    Raises:
        FileNotFoundError: If the file does not exist
        ValueError: If the columns differ from the report contract
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"Report not found: {path}")
    fmt = _resolve_format(path, fmt)
    text = path.read_text(encoding="utf-8")
    if fmt == "json":
        rows = json.loads(text)
    else:
        reader = csv.DictReader(io.StringIO(text))
        if tuple(reader.fieldnames or ()) != REPORT_COLUMNS:
            raise ValueError(f"Unexpected report columns {reader.fieldnames}")
        rows = list(reader)
    return [_record_from_cells(row) for row in rows]


def notes_path(report_path: Union[str, Path]) -> Path:
    report_path = Path(report_path)
    return report_path.with_name(report_path.name + ".notes.md")


def format_notes(truth: Optional[GroundTruth], records: Iterable[BenchRecord]) -> str:
    lines = ["# Report notes", ""]
    lines.append("Seconds are exact frame arithmetic: (crash_frame - frame) / fps.")
    if truth is None or truth.crash_frame is None:
        lines.append("")
        lines.append("No crash frame was supplied, so seconds-before-crash is not reported.")
        return "\n".join(lines) + "\n"

    timeline = truth.timeline()
    lines += ["", "## Timeline", "",
              f"- crash at frame {truth.crash_frame} ({timeline.crash_seconds:.3f} s at {truth.fps:g} fps)"]
    if timeline.visible_to_crash is not None:
        lines.append(f"- first visible at frame {truth.first_visible_frame}: "
                     f"{timeline.visible_to_crash:.4f} s before the crash")
    if timeline.silhouette_to_crash is not None:
        lines.append(f"- full silhouette at frame {truth.full_silhouette_frame}: "
                     f"{timeline.silhouette_to_crash:.4f} s before the crash")

    detected = [r for r in records if r.seconds_before_crash is not None]
    if detected:
        lines += ["", "## First detections", ""]
        for r in detected:
            lines.append(f"- {r.method}: frame {r.first_detection_frame}, "
                         f"{r.seconds_before_crash:.4f} s before the crash")

    if truth.crash_frame == 95 and truth.fps == 24:
        lines += ["", "## Rounding", ""]
        for frame, rounded in sorted(ROUNDED_REFERENCE.items(), reverse=True):
            exact = (truth.crash_frame - frame) / truth.fps
            lines.append(f"- frame {frame}: {exact:.4f} s here; commonly quoted as {rounded:.2f} s, "
                         f"computed from the crash time truncated to 3.95 s")
    return "\n".join(lines) + "\n"


def write_report_notes(report_path: Union[str, Path], truth: Optional[GroundTruth],
                       records: Iterable[BenchRecord]) -> Path:
    """Write the `<report>.notes.md` sidecar and return its path."""
    path = notes_path(report_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_notes(truth, records), encoding="utf-8")
    return path
