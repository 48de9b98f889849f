# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Canny Edge Detector

Stages: Gaussian smoothing (radius ceil(3 sigma)), Sobel gradients,
non-maximal suppression along the gradient quantized to 0/45/90/135
degrees, and hysteresis. Pixels at or above `high` are strong; pixels in
[low, high) survive only when 8-connected, possibly through other weak
pixels, to a strong one. Thresholds are on the Sobel magnitude scale.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import ndimage

from ..frameio.frame import Frame, require_gray
from ..utils.validators import require_finite, require_positive
from .filters import gaussian_blur, sobel_gradients

EIGHT_CONNECTED = np.ones((3, 3), dtype=bool)

_TAN_22_5 = 0.41421356237309503
_TAN_67_5 = 2.414213562373095

# (dy, dx) of the positive-side neighbor for each direction code
DIRECTION_STEPS = ((0, 1), (1, 0), (1, 1), (1, -1))
HORIZONTAL, VERTICAL, MAIN_DIAGONAL, ANTI_DIAGONAL = range(4)


@dataclass(frozen=True)
class CannyParams:
    sigma: float = 1.0
    low: float = 40.0
    high: float = 120.0

    def __post_init__(self):
        require_positive("sigma", self.sigma)
        require_finite("low", self.low)
        require_finite("high", self.high)
        if not 0 <= self.low < self.high:
            raise ValueError(f"Canny thresholds need 0 <= low < high, got low={self.low}, high={self.high}")


def quantize_direction(gx: np.ndarray, gy: np.ndarray) -> np.ndarray:
    """
    Gradient direction codes (int8): HORIZONTAL within 22.5 degrees of the
    x axis, VERTICAL within 22.5 degrees of the y axis, otherwise
    MAIN_DIAGONAL when gx and gy share a sign and ANTI_DIAGONAL when not.
    """
    ax, ay = np.abs(gx), np.abs(gy)
    codes = np.where((gx * gy) > 0, MAIN_DIAGONAL, ANTI_DIAGONAL).astype(np.int8)
    codes[ay <= ax * _TAN_22_5] = HORIZONTAL
    codes[ay > ax * _TAN_67_5] = VERTICAL
    return codes


def non_max_suppression(magnitude: np.ndarray, gx: np.ndarray, gy: np.ndarray,
                        candidates: Optional[np.ndarray] = None) -> np.ndarray:
    """
    Keep pixels that are maxima along their quantized gradient direction.

    A pixel must be strictly greater than the neighbor on the negative side
    and at least equal to the one on the positive side, so a two-pixel
    plateau keeps exactly one pixel. Only `candidates` (default: nonzero
    magnitude) are examined; every other pixel comes out 0. Any monotone
    magnitude scale works, squared magnitudes included.
    """
    if candidates is None:
        candidates = magnitude > 0
    out = np.zeros_like(magnitude)
    rows, cols = np.nonzero(candidates)
    if rows.size == 0:
        return out

    stride = magnitude.shape[1] + 2
    padded = np.pad(magnitude, 1, mode="edge").ravel()
    index = (rows + 1) * stride + (cols + 1)
    c = padded[index]
    steps = np.array([dy * stride + dx for dy, dx in DIRECTION_STEPS])
    offset = steps[quantize_direction(gx[rows, cols], gy[rows, cols])]

    keep = (c > padded[index - offset]) & (c >= padded[index + offset])
    out[rows[keep], cols[keep]] = c[keep]
    return out


def hysteresis(suppressed: np.ndarray, low: float, high: float) -> np.ndarray:
    """Boolean edge map: pixels >= low 8-connected, transitively, to a pixel >= high."""
    strong = suppressed >= high
    if not strong.any():
        return strong
    return ndimage.binary_propagation(strong, structure=EIGHT_CONNECTED, mask=suppressed >= low)


def canny(gray: Frame, params: CannyParams) -> Frame:
    """
    Binary edge map (0 / 255) of a 1-channel frame.

    Suppression and hysteresis run on squared magnitudes against squared
    thresholds.

    Raises:
        ValueError: Multi-channel input
    """
    pixels = require_gray(gray, "canny")
    smoothed = gaussian_blur(pixels, params.sigma)
    gx, gy = sobel_gradients(smoothed)
    magnitude2 = gx * gx
    magnitude2 += gy * gy
    low2 = np.float32(params.low) ** 2
    high2 = np.float32(params.high) ** 2
    suppressed = non_max_suppression(magnitude2, gx, gy, candidates=magnitude2 >= low2)
    edges = hysteresis(suppressed, low2, high2)
    return Frame(edges.astype(np.uint8) * np.uint8(255))
