# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Harris Corner Detector

R = det(M) - k * trace(M)^2 over the Gaussian-weighted structure tensor
of Sobel derivatives. Corners are 3x3 local maxima with positive R of at
least response_threshold * max(R).
"""

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from scipy import ndimage

from ..frameio.frame import Frame, require_gray
from ..utils.validators import require_positive, require_range
from .filters import BORDER_MODE, sobel_gradients

Corner = Tuple[int, int, float]


@dataclass(frozen=True)
class HarrisParams:
    k: float = 0.04
    window_sigma: float = 1.0
    response_threshold: float = 0.01

    def __post_init__(self):
        require_range("k", self.k, 0.0, 0.25)
        require_positive("window_sigma", self.window_sigma)
        require_range("response_threshold", self.response_threshold, 0.0, 1.0, high_inclusive=True)


def harris_response(gray: Frame, params: HarrisParams) -> np.ndarray:
    """Corner response map R, float64, same shape as the frame."""
    pixels = require_gray(gray, "harris").astype(np.float64)
    ix, iy = sobel_gradients(pixels)

    def window(values: np.ndarray) -> np.ndarray:
        return ndimage.gaussian_filter(values, params.window_sigma, mode=BORDER_MODE, truncate=3.0)

    sxx = window(ix * ix)
    syy = window(iy * iy)
    sxy = window(ix * iy)
    trace = sxx + syy
    return sxx * syy - sxy * sxy - params.k * trace * trace


def harris(gray: Frame, params: HarrisParams) -> List[Corner]:
    """
    Detected corners as (x, y, response), strongest first.

    A constant image has no positive response and yields an empty list.
    """
    response = harris_response(gray, params)
    peak = float(response.max())
    if peak <= 0.0:
        return []

    local_max = response == ndimage.maximum_filter(response, size=3, mode=BORDER_MODE)
    selected = local_max & (response > 0) & (response >= params.response_threshold * peak)
    ys, xs = np.nonzero(selected)
    values = response[ys, xs]
    order = np.lexsort((xs, ys, -values))
    return [(int(xs[i]), int(ys[i]), float(values[i])) for i in order]
