# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Ground-truth CSV

    # crash_frame=95 fps=24 first_visible_frame=60 full_silhouette_frame=73
    frame,x,y,w,h,label
    74,312,201,40,96,person

Comment lines carry key=value sequence marks; comments without '=' are
ignored. The header row is optional. Labels default to "person" when the
column is left empty.
"""

from pathlib import Path
from typing import Optional, Union

from ..frameio.frame import BoundingBox
from ..logging import get_logger
from .models import GroundTruth

logger = get_logger(__name__, component="bench")

GT_COLUMNS = ("frame", "x", "y", "w", "h", "label")
_INT_MARKS = ("crash_frame", "first_visible_frame", "full_silhouette_frame")


class GroundTruthError(ValueError):
    """Raised for malformed ground-truth files; the message names the line."""


def _parse_marks(text: str, lineno: int, marks: dict) -> None:
    for token in text.replace(",", " ").split():
        if "=" not in token:
            continue
        key, _, value = token.partition("=")
        key = key.strip()
        try:
            if key in _INT_MARKS:
                marks[key] = int(value)
            elif key == "fps":
                marks["fps"] = float(value)
            else:
                raise GroundTruthError(f"line {lineno}: unknown mark '{key}'")
        except ValueError as e:
            if isinstance(e, GroundTruthError):
                raise
            raise GroundTruthError(f"line {lineno}: bad value for '{key}': {value!r}") from e


def parse_ground_truth(text: str, default_fps: Optional[float] = None) -> GroundTruth:
    """
    Parse ground-truth CSV text.

    A file without an fps mark takes `default_fps` when one is given; a mark
    that disagrees with `default_fps` wins and is logged.
    """
    marks: dict = {}
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            _parse_marks(line[1:], lineno, marks)
            continue
        cells = [c.strip() for c in line.split(",")]
        if cells[0] == "frame":
            continue
        if len(cells) not in (5, 6):
            raise GroundTruthError(f"line {lineno}: expected {len(GT_COLUMNS)} columns, got {len(cells)}")
        try:
            frame, x, y, w, h = (int(c) for c in cells[:5])
            bbox = BoundingBox(x, y, w, h)
        except ValueError as e:
            raise GroundTruthError(f"line {lineno}: {e}") from e
        if frame < 0:
            raise GroundTruthError(f"line {lineno}: negative frame index {frame}")
        label = cells[5] if len(cells) == 6 and cells[5] else "person"
        rows.append((frame, bbox, label))

    if default_fps is not None:
        if "fps" not in marks:
            marks["fps"] = default_fps
        elif marks["fps"] != default_fps:
            logger.warning(
                f"Ground truth fps={marks['fps']:g} differs from fps={default_fps:g}, using the file's value",
                extra={"extra_fields": {"gt_fps": marks["fps"], "fps": default_fps}}
            )

    try:
        truth = GroundTruth(**marks)
    except ValueError as e:
        raise GroundTruthError(str(e)) from e
    for frame, bbox, label in rows:
        truth.add(frame, bbox, label)
    return truth


def load_ground_truth(path: Union[str, Path], default_fps: Optional[float] = None) -> GroundTruth:
    """
    Load a ground-truth file; see parse_ground_truth for `default_fps`.

    Raises:
        FileNotFoundError: If the file does not exist
        GroundTruthError: If a line is malformed
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"Ground truth file not found: {path}")
    truth = parse_ground_truth(path.read_text(encoding="utf-8"), default_fps)
    logger.info(
        f"Ground truth loaded from {path}",
        extra={"extra_fields": {
            "annotated_frames": len(truth.boxes), "crash_frame": truth.crash_frame
        }}
    )
    return truth


def format_ground_truth(truth: GroundTruth) -> str:
    marks = [f"fps={truth.fps:g}"]
    for key in _INT_MARKS:
        value = getattr(truth, key)
        if value is not None:
            marks.append(f"{key}={value}")
    lines = ["# " + " ".join(marks), ",".join(GT_COLUMNS)]
    for frame in truth.annotated_frames:
        for bbox, label in truth.boxes_at(frame):
            lines.append(f"{frame},{bbox.x},{bbox.y},{bbox.w},{bbox.h},{label}")
    return "\n".join(lines) + "\n"


def save_ground_truth(truth: GroundTruth, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_ground_truth(truth), encoding="utf-8")
    return path
