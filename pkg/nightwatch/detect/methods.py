# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

from typing import Any, Dict, List

from ..core.base_class import FrameMethod
from ..frameio.frame import Frame, to_grayscale
from .models import Detection, HogParams, LinearModel, PyramidParams
from .sliding import detect_pedestrians


class HogSvmMethod(FrameMethod):
    """
    HOG + linear SVM detector. Detections carry the frame ordinal, taken
    from context['frame_offset'] (default 0) plus the frames seen so far.
    """
    name = "HOG + SVM"
    output_kind = "detections"

    def __init__(self, model: LinearModel, hog: HogParams = HogParams(),
                 pyr: PyramidParams = PyramidParams()):
        super().__init__()
        self.model = model
        self.hog = hog
        self.pyr = pyr
        self.frame_offset = 0

    def _setup(self, context: Dict[str, Any]) -> None:
        if self.model.length != self.hog.descriptor_length:
            raise ValueError(
                f"Model length {self.model.length} does not match HOG descriptor length "
                f"{self.hog.descriptor_length}"
            )
        self.frame_offset = int(context.get("frame_offset", 0))

    def _apply(self, frame: Frame) -> List[Detection]:
        index = self.frame_offset + self.frames_processed
        return detect_pedestrians(to_grayscale(frame), self.model, self.hog, self.pyr, index)
