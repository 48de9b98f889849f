# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

from typing import Any, Dict, List

from ..core.base_class import FrameMethod
from ..frameio.frame import BoundingBox, Frame
from .candidates import CandidateFilterParams, pedestrian_candidates


class SegmentationMethod(FrameMethod):
    """Candidate boxes from the adaptive-threshold segmentation pipeline."""
    name = "Adaptive Threshold Segmentation"
    output_kind = "boxes"

    def __init__(self, params: CandidateFilterParams = CandidateFilterParams()):
        super().__init__()
        self.params = params

    def _setup(self, context: Dict[str, Any]) -> None:
        pass

    def _apply(self, frame: Frame) -> List[BoundingBox]:
        return pedestrian_candidates(frame, self.params)
