# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Detection timeliness.

A frame counts as "person detected" when one of its detections carries the
requested label and overlaps a ground-truth box of the same frame with
IoU >= iou_min.
"""

from typing import Dict, Iterable, List, Mapping, Optional

from ..detect.boxes import iou
from ..detect.models import Detection
from .models import GroundTruth

DetectionTable = Dict[int, List[Detection]]


def group_by_frame(detections: Iterable[Detection]) -> DetectionTable:
    """Detections grouped per frame, frames ascending, file order kept inside a frame."""
    table: DetectionTable = {}
    for det in detections:
        table.setdefault(det.frame_index, []).append(det)
    return dict(sorted(table.items()))


def frame_matches(detections: Iterable[Detection], truth: GroundTruth, frame: int,
                  iou_min: float = 0.5, label: str = "person") -> bool:
    boxes = [bbox for bbox, _ in truth.boxes_at(frame)]
    return any(
        det.label == label and any(iou(det.bbox, box) >= iou_min for box in boxes)
        for det in detections
    )


def eval_first_detection(detections: Mapping[int, Iterable[Detection]], truth: GroundTruth,
                         iou_min: float = 0.5, label: str = "person") -> Optional[int]:
    """Smallest frame with a matching detection, or None."""
    for frame in sorted(detections):
        if frame_matches(detections[frame], truth, frame, iou_min, label):
            return frame
    return None


def seconds_before_crash(detect_frame: int, crash_frame: int, fps: float) -> float:
    """
    (crash_frame - detect_frame) / fps

    Raises:
        ValueError: If detection comes after the crash or fps is not positive
    """
    if not fps > 0:
        raise ValueError(f"fps must be > 0, got {fps}")
    if detect_frame > crash_frame:
        raise ValueError(f"Detection frame {detect_frame} is after crash frame {crash_frame}")
    return (crash_frame - detect_frame) / fps
