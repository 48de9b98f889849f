# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Edge, corner and motion techniques as frame methods.
"""

from dataclasses import replace
from typing import Any, Dict, List, Optional

from ..core.base_class import FrameMethod
from ..frameio.frame import Frame, to_grayscale
from .canny import CannyParams, canny
from .gmm import BackgroundModel, GmmParams, gmm_init, gmm_update
from .harris import Corner, HarrisParams, harris


class CannyMethod(FrameMethod):
    name = "Canny Edge Detection"

    def __init__(self, params: CannyParams = CannyParams()):
        super().__init__()
        self.params = params

    def _setup(self, context: Dict[str, Any]) -> None:
        pass

    def _apply(self, frame: Frame) -> Frame:
        return canny(to_grayscale(frame), self.params)


class HarrisMethod(FrameMethod):
    name = "Harris Corner Detection"
    output_kind = "corners"

    def __init__(self, params: HarrisParams = HarrisParams()):
        super().__init__()
        self.params = params

    def _setup(self, context: Dict[str, Any]) -> None:
        pass

    def _apply(self, frame: Frame) -> List[Corner]:
        return harris(to_grayscale(frame), self.params)


class MotionMethod(FrameMethod):
    """
    GMM motion map. Stateful: initialize() discards the learned background,
    and frames must be processed in order, one at a time.
    """
    stateful = True

    def __init__(self, params: GmmParams = GmmParams(), shadows: Optional[bool] = None):
        super().__init__()
        if shadows is not None:
            params = replace(params, detect_shadows=shadows)
        self.params = params
        self.name = "Motion Map (Shadows)" if params.detect_shadows else "Motion Map (No Shadows)"
        self.model: Optional[BackgroundModel] = None

    def _setup(self, context: Dict[str, Any]) -> None:
        width, height = context.get("width"), context.get("height")
        self.model = gmm_init(self.params, width, height) if width and height else None

    def _apply(self, frame: Frame) -> Frame:
        if self.model is None:
            self.model = gmm_init(self.params, frame.width, frame.height)
        return gmm_update(self.model, to_grayscale(frame))
