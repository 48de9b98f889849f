# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Convolution helpers shared by the edge and corner detectors.

Every filter replicates the border pixel (clamp-to-edge).
"""

import math

import numpy as np
from scipy import ndimage

BORDER_MODE = "nearest"


def gaussian_kernel(sigma: float) -> np.ndarray:
    """Normalized 1-D Gaussian with radius ceil(3 * sigma)."""
    radius = max(int(math.ceil(3.0 * sigma)), 1)
    x = np.arange(-radius, radius + 1, dtype=np.float64)
    kernel = np.exp(-(x * x) / (2.0 * sigma * sigma))
    return kernel / kernel.sum()


def gaussian_blur(image: np.ndarray, sigma: float, dtype=np.float32) -> np.ndarray:
    kernel = gaussian_kernel(sigma).astype(dtype)
    out = ndimage.correlate1d(image.astype(dtype, copy=False), kernel, axis=0, mode=BORDER_MODE)
    return ndimage.correlate1d(out, kernel, axis=1, mode=BORDER_MODE)


def sobel_gradients(image: np.ndarray):
    """
    3x3 Sobel derivatives (gx along columns, gy along rows, y pointing down).

    Floating input keeps its dtype; integer input is promoted to float32.
    """
    if not np.issubdtype(image.dtype, np.floating):
        image = image.astype(np.float32)
    p = np.pad(image, 1, mode="edge")
    dx = p[:, 2:] - p[:, :-2]
    dy = p[2:, :] - p[:-2, :]
    gx = dx[:-2] + dx[2:]
    gx += 2 * dx[1:-1]
    gy = dy[:, :-2] + dy[:, 2:]
    gy += 2 * dy[:, 1:-1]
    return gx, gy
