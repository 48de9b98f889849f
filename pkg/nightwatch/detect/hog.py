# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Histogram of Oriented Gradients

Gradients use the centered [-1, 0, 1] filter with clamped borders. Each
pixel votes its magnitude into the two unsigned orientation bins nearest
its angle (bin centers at 10, 30, ..., 170 degrees, wrapping at 180).
Cell histograms are grouped into overlapping blocks that are L2-Hys
normalized and concatenated row-major.

The same cell/block arrays are reused by the sliding-window detector, which
computes them once per pyramid level instead of once per window.
"""

from typing import Union

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy import ndimage

from ..frameio.frame import Frame, require_gray
from .models import HogParams

ImageLike = Union[Frame, np.ndarray]


def _as_array(image: ImageLike, operation: str) -> np.ndarray:
    if isinstance(image, Frame):
        return require_gray(image, operation)
    if image.ndim != 2:
        raise ValueError(f"{operation} requires a 2-D image, got shape {image.shape}")
    return image


def gradients(pixels: np.ndarray):
    """Centered differences (gx along columns, gy along rows), borders clamped."""
    padded = np.pad(pixels.astype(np.float64), 1, mode="edge")
    gx = padded[1:-1, 2:] - padded[1:-1, :-2]
    gy = padded[2:, 1:-1] - padded[:-2, 1:-1]
    return gx, gy


def cell_histograms(image: ImageLike, params: HogParams = HogParams()) -> np.ndarray:
    """
    Magnitude-weighted orientation histograms of shape (cells_y, cells_x, bins).

    Rows and columns past the last whole cell do not vote.
    """
    pixels = _as_array(image, "cell_histograms")
    cells_y, cells_x = pixels.shape[0] // params.cell, pixels.shape[1] // params.cell
    if cells_y == 0 or cells_x == 0:
        return np.zeros((cells_y, cells_x, params.bins), dtype=np.float64)

    gx, gy = gradients(pixels)
    rows, cols = cells_y * params.cell, cells_x * params.cell
    gx, gy = gx[:rows, :cols], gy[:rows, :cols]

    magnitude = np.hypot(gx, gy)
    angle = np.mod(np.degrees(np.arctan2(gy, gx)), 180.0)
    position = angle / (180.0 / params.bins) - 0.5
    lower = np.floor(position)
    upper_share = position - lower
    lower_bin = np.mod(lower.astype(np.int64), params.bins)
    upper_bin = np.mod(lower_bin + 1, params.bins)

    cell_row = (np.arange(rows) // params.cell)[:, None]
    cell_col = (np.arange(cols) // params.cell)[None, :]
    cell_index = (cell_row * cells_x + cell_col) * params.bins

    size = cells_y * cells_x * params.bins
    hist = np.bincount((cell_index + lower_bin).ravel(),
                       weights=(magnitude * (1.0 - upper_share)).ravel(), minlength=size)
    hist += np.bincount((cell_index + upper_bin).ravel(),
                        weights=(magnitude * upper_share).ravel(), minlength=size)
    return hist.reshape(cells_y, cells_x, params.bins)


def l2_hys(vectors: np.ndarray, clip: float, epsilon: float) -> np.ndarray:
    """L2 normalize, clip, renormalize along the last axis."""
    eps2 = epsilon * epsilon
    normed = vectors / np.sqrt(np.sum(vectors * vectors, axis=-1, keepdims=True) + eps2)
    normed = np.minimum(normed, clip)
    return normed / np.sqrt(np.sum(normed * normed, axis=-1, keepdims=True) + eps2)


def normalized_blocks(cells: np.ndarray, params: HogParams = HogParams()) -> np.ndarray:
    """
    L2-Hys normalized blocks of shape (blocks_y, blocks_x, block_length).

    Each block vector lists its cells row-major, bins innermost.
    """
    bc = params.block_cells
    if cells.shape[0] < bc or cells.shape[1] < bc:
        return np.zeros((0, 0, params.block_length), dtype=np.float64)
    windows = sliding_window_view(cells, (bc, bc), axis=(0, 1))
    windows = windows[::params.block_stride, ::params.block_stride]
    blocks = np.moveaxis(windows, 2, -1).reshape(windows.shape[0], windows.shape[1], -1)
    return l2_hys(blocks, params.norm_clip, params.epsilon)


def hog_descriptor(window: ImageLike, params: HogParams = HogParams()) -> np.ndarray:
    """
    Descriptor of one detection window.

    Raises:
        ValueError: If the window is not window_width x window_height
    """
    pixels = _as_array(window, "hog_descriptor")
    expected = (params.window_height, params.window_width)
    if pixels.shape != expected:
        raise ValueError(
            f"HOG window must be {params.window_width}x{params.window_height}, "
            f"got {pixels.shape[1]}x{pixels.shape[0]}"
        )
    return normalized_blocks(cell_histograms(pixels, params), params).ravel()


def resize_gray(pixels: np.ndarray, width: int, height: int) -> np.ndarray:
    """Bilinear resample to width x height (float64), pixel centers aligned."""
    src_h, src_w = pixels.shape
    if (src_h, src_w) == (height, width):
        return pixels.astype(np.float64)
    ys = np.clip((np.arange(height) + 0.5) * src_h / height - 0.5, 0, src_h - 1)
    xs = np.clip((np.arange(width) + 0.5) * src_w / width - 0.5, 0, src_w - 1)
    grid = np.meshgrid(ys, xs, indexing="ij")
    return ndimage.map_coordinates(pixels.astype(np.float64), grid, order=1, mode="nearest")
