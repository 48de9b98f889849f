# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""Box overlap and greedy non-maximum suppression."""

from typing import Iterable, List

from ..frameio.frame import BoundingBox
from .models import Detection


def iou(a: BoundingBox, b: BoundingBox) -> float:
    """Intersection area over union area; 0.0 for disjoint boxes."""
    ix = min(a.x + a.w, b.x + b.w) - max(a.x, b.x)
    iy = min(a.y + a.h, b.y + b.h) - max(a.y, b.y)
    if ix <= 0 or iy <= 0:
        return 0.0
    inter = ix * iy
    return inter / (a.area + b.area - inter)


def _rank(det: Detection):
    return (-det.score, det.bbox.y, det.bbox.x, det.bbox.h, det.bbox.w, det.label)


def nms(detections: Iterable[Detection], iou_threshold: float) -> List[Detection]:
    """
    Keep the best remaining detection, drop everything overlapping it with
    iou >= iou_threshold, repeat. Equal scores rank by (y, x).
    """
    remaining = sorted(detections, key=_rank)
    kept: List[Detection] = []
    for det in remaining:
        if all(iou(det.bbox, k.bbox) < iou_threshold for k in kept):
            kept.append(det)
    return kept
