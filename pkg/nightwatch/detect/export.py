# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""Detection JSON-lines emission: one object per detection."""

import json
from dataclasses import replace
from pathlib import Path
from typing import Iterable, List, TextIO, Union

from .models import Detection


def detection_line(det: Detection) -> str:
    return json.dumps(det.to_record(), separators=(", ", ": "))


def write_detections(stream: TextIO, detections: Iterable[Detection]) -> int:
    """Write detections to an open text stream; returns the count."""
    count = 0
    for det in detections:
        stream.write(detection_line(det) + "\n")
        count += 1
    return count


def save_detections(path: Union[str, Path], detections: Iterable[Detection]) -> int:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        return write_detections(f, detections)


def tag_frame(detections: Iterable[Detection], frame_index: int) -> List[Detection]:
    """Same detections attributed to frame_index."""
    return [replace(det, frame_index=frame_index) for det in detections]
