# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Enhancement techniques as frame methods for the benchmark harness and CLI.

Equalization and thresholding work on luma; RGB input is converted to gray
first. Gamma keeps the channel count.
"""

from typing import Any, Dict

from ..core.base_class import FrameMethod
from ..frameio.frame import Frame, to_grayscale
from .gamma import GammaParams, gamma_correct
from .histogram import ClaheParams, clahe, hist_equalize
from .threshold import binary_threshold, threshold_lut


class GammaMethod(FrameMethod):
    name = "Gamma Correction"

    def __init__(self, params: GammaParams = GammaParams()):
        super().__init__()
        self.params = params

    def _setup(self, context: Dict[str, Any]) -> None:
        pass

    def _apply(self, frame: Frame) -> Frame:
        return gamma_correct(frame, self.params)


class HistEqualizeMethod(FrameMethod):
    name = "Histogram Equalization"

    def _setup(self, context: Dict[str, Any]) -> None:
        pass

    def _apply(self, frame: Frame) -> Frame:
        return hist_equalize(to_grayscale(frame))


class ClaheMethod(FrameMethod):
    name = "CLAHE"

    def __init__(self, params: ClaheParams = ClaheParams()):
        super().__init__()
        self.params = params

    def _setup(self, context: Dict[str, Any]) -> None:
        width, height = context.get("width"), context.get("height")
        if width is not None and height is not None and (
                self.params.tiles_x > width or self.params.tiles_y > height):
            raise ValueError(
                f"Tile grid {self.params.tiles_x}x{self.params.tiles_y} exceeds frame {width}x{height}"
            )

    def _apply(self, frame: Frame) -> Frame:
        return clahe(to_grayscale(frame), self.params)


class ThresholdMethod(FrameMethod):
    name = "Binary Thresholding"

    def __init__(self, t: int = 128):
        super().__init__()
        threshold_lut(t)
        self.t = t

    def _setup(self, context: Dict[str, Any]) -> None:
        pass

    def _apply(self, frame: Frame) -> Frame:
        return binary_threshold(to_grayscale(frame), self.t)
