# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
External detector ingestion.

Reads the detection JSON-lines format written by `nightwatch detect`, so
outputs of detectors run elsewhere can be scored next to in-repo methods.
Required keys are frame, x, y, w, h; score defaults to 1.0 and label to
"person". Blank lines are skipped.
"""

import json
import math
from pathlib import Path
from typing import Union

from ..detect.models import Detection
from ..frameio.frame import BoundingBox
from ..logging import get_logger
from .evaluation import DetectionTable, group_by_frame

logger = get_logger(__name__, component="bench")

_REQUIRED = ("frame", "x", "y", "w", "h")


class IngestError(ValueError):
    """Raised for a malformed detection line; the message names the line."""


def _int_field(record: dict, key: str, lineno: int) -> int:
    value = record[key]
    if (isinstance(value, bool) or not isinstance(value, (int, float))
            or not math.isfinite(value) or value != int(value)):
        raise IngestError(f"line {lineno}: '{key}' must be an integer, got {value!r}")
    return int(value)


def parse_detection_line(line: str, lineno: int) -> Detection:
    try:
        record = json.loads(line)
    except json.JSONDecodeError as e:
        raise IngestError(f"line {lineno}: invalid JSON ({e.msg})") from e
    if not isinstance(record, dict):
        raise IngestError(f"line {lineno}: expected a JSON object")
    missing = [k for k in _REQUIRED if k not in record]
    if missing:
        raise IngestError(f"line {lineno}: missing keys {missing}")

    frame, x, y, w, h = (_int_field(record, k, lineno) for k in _REQUIRED)
    if w <= 0 or h <= 0:
        raise IngestError(f"line {lineno}: box size must be positive, got {w}x{h}")
    if x < 0 or y < 0 or frame < 0:
        raise IngestError(f"line {lineno}: negative frame or box origin")
    score = record.get("score", 1.0)
    if isinstance(score, bool) or not isinstance(score, (int, float)) or not math.isfinite(score):
        raise IngestError(f"line {lineno}: score must be a finite number, got {score!r}")
    label = record.get("label", "person")
    if not isinstance(label, str):
        raise IngestError(f"line {lineno}: label must be a string")
    return Detection(BoundingBox(x, y, w, h), float(score), label, frame)


def ingest_external_detections(path: Union[str, Path]) -> DetectionTable:
    """
    Detections grouped and sorted by frame index.

    Raises:
        FileNotFoundError: If the file does not exist
        IngestError: On the first malformed line
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"Detection file not found: {path}")
    detections = []
    with open(path, "r", encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            if line.strip():
                detections.append(parse_detection_line(line, lineno))
    table = group_by_frame(detections)
    logger.info(
        f"Ingested {len(detections)} detections from {path}",
        extra={"extra_fields": {"frames": len(table)}}
    )
    return table
