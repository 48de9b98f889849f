# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Detector data models: HOG geometry, the linear classifier, pyramid search
settings and the detection record.
"""

from dataclasses import dataclass
from typing import Any, Dict

import numpy as np

from ..frameio.frame import BoundingBox
from ..utils.validators import require_int, require_positive, require_range


@dataclass(frozen=True)
class HogParams:
    """
    Canonical pedestrian HOG: 64x128 window, 8-px cells, 2x2-cell blocks
    with a one-cell stride, 9 unsigned orientation bins, L2-Hys at 0.2.
    """
    window_width: int = 64
    window_height: int = 128
    cell: int = 8
    block_cells: int = 2
    block_stride: int = 1
    bins: int = 9
    norm_clip: float = 0.2
    epsilon: float = 1e-6

    def __post_init__(self):
        for name in ("window_width", "window_height", "cell", "block_cells", "block_stride", "bins"):
            require_int(name, getattr(self, name))
        if self.window_width % self.cell or self.window_height % self.cell:
            raise ValueError(
                f"Window {self.window_width}x{self.window_height} is not divisible by cell {self.cell}"
            )
        if self.block_cells > min(self.cells_x, self.cells_y):
            raise ValueError(f"block_cells {self.block_cells} exceeds the window's cell grid")
        require_positive("norm_clip", self.norm_clip)
        require_positive("epsilon", self.epsilon)

    @property
    def cells_x(self) -> int:
        return self.window_width // self.cell

    @property
    def cells_y(self) -> int:
        return self.window_height // self.cell

    @property
    def blocks_x(self) -> int:
        return (self.cells_x - self.block_cells) // self.block_stride + 1

    @property
    def blocks_y(self) -> int:
        return (self.cells_y - self.block_cells) // self.block_stride + 1

    @property
    def block_length(self) -> int:
        return self.block_cells * self.block_cells * self.bins

    @property
    def descriptor_length(self) -> int:
        return self.blocks_x * self.blocks_y * self.block_length


@dataclass(frozen=True, eq=False)
class LinearModel:
    """Linear decision function w.x + b; windows scoring above score_threshold are detections."""
    weights: np.ndarray
    bias: float = 0.0
    score_threshold: float = 0.0

    def __post_init__(self):
        weights = np.array(self.weights, dtype=np.float64).ravel()
        if weights.size == 0:
            raise ValueError("LinearModel weights must not be empty")
        if not np.all(np.isfinite(weights)) or not np.isfinite(self.bias):
            raise ValueError("LinearModel weights and bias must be finite")
        if np.isnan(self.score_threshold):
            raise ValueError("score_threshold must not be NaN")
        weights.setflags(write=False)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "bias", float(self.bias))
        object.__setattr__(self, "score_threshold", float(self.score_threshold))

    @property
    def length(self) -> int:
        return int(self.weights.size)

    def with_threshold(self, score_threshold: float) -> "LinearModel":
        return LinearModel(self.weights, self.bias, score_threshold)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearModel):
            return NotImplemented
        return (np.array_equal(self.weights, other.weights)
                and self.bias == other.bias
                and self.score_threshold == other.score_threshold)

    __hash__ = None


@dataclass(frozen=True)
class PyramidParams:
    scale_step: float = 1.05
    window_stride: int = 8
    nms_iou: float = 0.3
    max_levels: int = 64

    def __post_init__(self):
        if not np.isfinite(self.scale_step) or self.scale_step <= 1.0:
            raise ValueError(f"scale_step must be > 1, got {self.scale_step!r}")
        require_int("window_stride", self.window_stride)
        require_range("nms_iou", self.nms_iou, 0.0, 1.0, high_inclusive=True)
        require_int("max_levels", self.max_levels)


@dataclass(frozen=True)
class Detection:
    bbox: BoundingBox
    score: float
    label: str = "person"
    frame_index: int = 0

    def __post_init__(self):
        if not np.isfinite(self.score):
            raise ValueError(f"Detection score must be finite, got {self.score!r}")
        if self.frame_index < 0:
            raise ValueError(f"frame_index must be >= 0, got {self.frame_index}")

    def to_record(self) -> Dict[str, Any]:
        """JSON-lines record: frame, x, y, w, h, score, label."""
        return {
            "frame": self.frame_index,
            "x": self.bbox.x,
            "y": self.bbox.y,
            "w": self.bbox.w,
            "h": self.bbox.h,
            "score": self.score,
            "label": self.label,
        }
