# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Local-mean adaptive binarization.

A pixel is set (255) when it is brighter than the mean of its
window x window neighborhood by more than `offset`. Window sums come from
an integral image over the edge-replicated frame, so the cost per pixel is
constant regardless of window size.
"""

import numpy as np

from ..frameio.frame import Frame, require_gray


def integral_image(pixels: np.ndarray) -> np.ndarray:
    """Summed-area table with a leading zero row and column (int64)."""
    table = np.zeros((pixels.shape[0] + 1, pixels.shape[1] + 1), dtype=np.int64)
    np.cumsum(np.cumsum(pixels, axis=0, dtype=np.int64), axis=1, out=table[1:, 1:])
    return table


def window_sums(pixels: np.ndarray, window: int) -> np.ndarray:
    """Sum over the window centered on every pixel, borders clamped."""
    radius = window // 2
    padded = np.pad(pixels, radius, mode="edge")
    table = integral_image(padded)
    height, width = pixels.shape
    return (table[window:window + height, window:window + width]
            - table[:height, window:window + width]
            - table[window:window + height, :width]
            + table[:height, :width])


def adaptive_binarize(gray: Frame, window: int = 31, offset: int = 10) -> Frame:
    """
    Binary frame: 255 where v > local_mean + offset, else 0.

    Raises:
        ValueError: If window is even or smaller than 3
    """
    if not isinstance(window, int) or window < 3 or window % 2 == 0:
        raise ValueError(f"window must be an odd integer >= 3, got {window!r}")
    pixels = require_gray(gray, "adaptive_binarize")
    area = window * window
    sums = window_sums(pixels, window)
    # v > sum/area + offset, kept in integers
    above = pixels.astype(np.int64) * area > sums + int(round(offset * area))
    return Frame(np.where(above, 255, 0).astype(np.uint8))
