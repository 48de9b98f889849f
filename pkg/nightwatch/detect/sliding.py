# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Multi-Scale Sliding-Window Detection

The frame is searched over an image pyramid shrinking by scale_step per
level until the detection window no longer fits. When the window stride is
a multiple of the block grid pitch, every level is described once (cell
histograms and normalized blocks for the whole level) and all windows are
scored by correlating the reshaped weight vector with the block array.
Other strides fall back to one descriptor per window.
"""

from typing import Iterator, List, Tuple

import numpy as np

from ..frameio.frame import BoundingBox, Frame, require_gray
from .boxes import nms
from .hog import cell_histograms, hog_descriptor, normalized_blocks, resize_gray
from .models import Detection, HogParams, LinearModel, PyramidParams

Level = Tuple[int, int, int]


def pyramid_levels(width: int, height: int, hog: HogParams, pyr: PyramidParams) -> Iterator[Level]:
    """Yield (level, level_width, level_height) while the window fits."""
    for level in range(pyr.max_levels):
        scale = pyr.scale_step ** level
        level_w, level_h = int(round(width / scale)), int(round(height / scale))
        if level_w < hog.window_width or level_h < hog.window_height:
            return
        yield level, level_w, level_h


def _dense_scores(pixels: np.ndarray, model: LinearModel, hog: HogParams, step: int) -> np.ndarray:
    """Window scores on the block grid, subsampled every `step` blocks."""
    blocks = normalized_blocks(cell_histograms(pixels, hog), hog)
    out_y = blocks.shape[0] - hog.blocks_y + 1
    out_x = blocks.shape[1] - hog.blocks_x + 1
    if out_y <= 0 or out_x <= 0:
        return np.zeros((0, 0))
    weights = model.weights.reshape(hog.blocks_y, hog.blocks_x, hog.block_length)
    partial = np.einsum("yxl,ijl->yxij", blocks, weights)
    scores = np.full((out_y, out_x), model.bias)
    for i in range(hog.blocks_y):
        for j in range(hog.blocks_x):
            scores += partial[i:i + out_y, j:j + out_x, i, j]
    return scores[::step, ::step]


def _window_scores(pixels: np.ndarray, model: LinearModel, hog: HogParams,
                   stride: int) -> List[Tuple[int, int, float]]:
    height, width = pixels.shape
    found = []
    for y in range(0, height - hog.window_height + 1, stride):
        for x in range(0, width - hog.window_width + 1, stride):
            window = pixels[y:y + hog.window_height, x:x + hog.window_width]
            found.append((x, y, float(model.weights @ hog_descriptor(window, hog) + model.bias)))
    return found


def level_scores(pixels: np.ndarray, model: LinearModel, hog: HogParams,
                 stride: int) -> List[Tuple[int, int, float]]:
    """(x, y, score) for every window position of one pyramid level."""
    pitch = hog.cell * hog.block_stride
    if stride % pitch:
        return _window_scores(pixels, model, hog, stride)
    scores = _dense_scores(pixels, model, hog, stride // pitch)
    return [(int(x) * stride, int(y) * stride, float(scores[y, x]))
            for y, x in np.ndindex(*scores.shape)]


def _require_model(model: LinearModel, hog: HogParams) -> None:
    if model.length != hog.descriptor_length:
        raise ValueError(
            f"Model length {model.length} does not match HOG descriptor length {hog.descriptor_length}"
        )


def detect_windows(gray: Frame, model: LinearModel, hog: HogParams = HogParams(),
                   pyr: PyramidParams = PyramidParams(), frame_index: int = 0) -> List[Detection]:
    """Every window scoring above the model threshold, before suppression."""
    _require_model(model, hog)
    pixels = require_gray(gray, "detect_pedestrians")
    height, width = pixels.shape
    detections = []
    for level, level_w, level_h in pyramid_levels(width, height, hog, pyr):
        level_pixels = resize_gray(pixels, level_w, level_h)
        sx, sy = width / level_w, height / level_h
        for x, y, score in level_scores(level_pixels, model, hog, pyr.window_stride):
            if not score > model.score_threshold:
                continue
            bx, by = int(round(x * sx)), int(round(y * sy))
            bw = min(int(round(hog.window_width * sx)), width - bx)
            bh = min(int(round(hog.window_height * sy)), height - by)
            detections.append(Detection(BoundingBox(bx, by, bw, bh), score, "person", frame_index))
    return detections


def detect_pedestrians(gray: Frame, model: LinearModel, hog: HogParams = HogParams(),
                       pyr: PyramidParams = PyramidParams(), frame_index: int = 0) -> List[Detection]:
    """
    Pyramid search followed by non-maximum suppression.

    A frame smaller than the window yields no detections.

    Raises:
        ValueError: If the frame is not 1-channel or the model length differs from the descriptor
    """
    return nms(detect_windows(gray, model, hog, pyr, frame_index), pyr.nms_iou)
