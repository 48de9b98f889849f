# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Histogram Equalization and CLAHE

Global equalization maps v -> round((cdf(v) - cdf_min) / (N - cdf_min) * 255).
A single-level image has no spread to equalize and is returned unchanged.

CLAHE splits the frame into a tiles_x x tiles_y grid, clips each tile
histogram at clip_limit * (tile pixels / 256), spreads the clipped mass
uniformly in one pass (the integer remainder is dropped), equalizes every
tile and blends the four nearest tile mappings bilinearly between tile
centers. Pixels outside the outermost centers fall back to the two (edge)
or one (corner) available mappings.
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..frameio.frame import Frame, require_gray
from ..utils.validators import require_int


@dataclass(frozen=True)
class ClaheParams:
    tiles_x: int = 8
    tiles_y: int = 8
    clip_limit: float = 2.0     # multiple of the uniform bin height; inf disables clipping

    def __post_init__(self):
        require_int("tiles_x", self.tiles_x)
        require_int("tiles_y", self.tiles_y)
        if math.isnan(self.clip_limit) or self.clip_limit < 1.0:
            raise ValueError(f"clip_limit must be >= 1.0, got {self.clip_limit!r}")


def _cdf_lut(hist: np.ndarray) -> np.ndarray:
    """
    Equalization LUT for one histogram (last axis = 256 levels).

    Rounds half up with exact integer arithmetic. Histograms with a single
    occupied level map to the identity.
    """
    hist = hist.astype(np.int64)
    cdf = np.cumsum(hist, axis=-1)
    total = cdf[..., -1:]
    occupied = hist > 0
    first = np.argmax(occupied, axis=-1)[..., None]
    cdf_min = np.take_along_axis(cdf, first, axis=-1)
    denom = total - cdf_min

    safe = np.where(denom > 0, denom, 1)
    numer = np.clip(cdf - cdf_min, 0, None) * 255
    lut = (2 * numer + safe) // (2 * safe)

    identity = np.broadcast_to(np.arange(256, dtype=np.int64), lut.shape)
    single_level = occupied.sum(axis=-1, keepdims=True) <= 1
    lut = np.where((denom > 0) & ~single_level, lut, identity)
    return lut.astype(np.uint8)


def equalization_lut(gray: Frame) -> np.ndarray:
    """The 256-entry global equalization table for a 1-channel frame."""
    pixels = require_gray(gray, "hist_equalize")
    hist = np.bincount(pixels.ravel(), minlength=256)
    return _cdf_lut(hist)


def hist_equalize(gray: Frame) -> Frame:
    """Global histogram equalization of a 1-channel frame."""
    pixels = require_gray(gray, "hist_equalize")
    lut = equalization_lut(gray)
    return Frame(lut[pixels])


def _tile_edges(length: int, tiles: int) -> np.ndarray:
    return (np.arange(tiles + 1, dtype=np.int64) * length) // tiles


def _interp_axis(length: int, edges: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    For every coordinate along one axis: lower tile, upper tile and the
    weight of the upper tile, interpolating between tile centers.
    """
    centers = (edges[:-1] + edges[1:] - 1) / 2.0
    coords = np.arange(length, dtype=np.float64)
    upper = np.searchsorted(centers, coords, side="right")
    lower = np.clip(upper - 1, 0, len(centers) - 1)
    upper = np.clip(upper, 0, len(centers) - 1)
    span = centers[upper] - centers[lower]
    weight = np.where(span > 0, (coords - centers[lower]) / np.where(span > 0, span, 1.0), 0.0)
    return lower, upper, weight.astype(np.float32)


def clahe_luts(pixels: np.ndarray, params: ClaheParams) -> np.ndarray:
    """Per-tile equalization LUTs, shape (tiles_y, tiles_x, 256)."""
    height, width = pixels.shape
    ys = _tile_edges(height, params.tiles_y)
    xs = _tile_edges(width, params.tiles_x)

    row_tile = np.repeat(np.arange(params.tiles_y), np.diff(ys))
    col_tile = np.repeat(np.arange(params.tiles_x), np.diff(xs))
    tile_id = row_tile[:, None] * params.tiles_x + col_tile[None, :]

    n_tiles = params.tiles_x * params.tiles_y
    hist = np.bincount((tile_id * 256 + pixels).ravel(), minlength=n_tiles * 256)
    hist = hist.reshape(n_tiles, 256).astype(np.int64)
    single_level = (hist > 0).sum(axis=1) <= 1

    if math.isfinite(params.clip_limit):
        tile_pixels = hist.sum(axis=1, keepdims=True)
        clip = np.maximum(np.floor(params.clip_limit * tile_pixels / 256.0), 1).astype(np.int64)
        excess = np.clip(hist - clip, 0, None).sum(axis=1, keepdims=True)
        hist = np.minimum(hist, clip) + excess // 256

    luts = _cdf_lut(hist)
    luts[single_level] = np.arange(256, dtype=np.uint8)
    return luts.reshape(params.tiles_y, params.tiles_x, 256)


def clahe(gray: Frame, params: ClaheParams) -> Frame:
    """
    Contrast-limited adaptive histogram equalization.

    Raises:
        ValueError: Multi-channel input or a tile grid larger than the frame
    """
    pixels = require_gray(gray, "clahe")
    height, width = pixels.shape
    if params.tiles_x > width or params.tiles_y > height:
        raise ValueError(
            f"Tile grid {params.tiles_x}x{params.tiles_y} exceeds frame {width}x{height}"
        )

    luts = clahe_luts(pixels, params)
    ys = _tile_edges(height, params.tiles_y)
    xs = _tile_edges(width, params.tiles_x)
    y0, y1, wy = _interp_axis(height, ys)
    x0, x1, wx = _interp_axis(width, xs)

    r0, r1 = y0[:, None], y1[:, None]
    c0, c1 = x0[None, :], x1[None, :]
    top = (1.0 - wx) * luts[r0, c0, pixels] + wx * luts[r0, c1, pixels]
    bottom = (1.0 - wx) * luts[r1, c0, pixels] + wx * luts[r1, c1, pixels]
    blended = (1.0 - wy[:, None]) * top + wy[:, None] * bottom

    out = np.clip(np.floor(blended + 0.5), 0, 255).astype(np.uint8)
    return Frame(out)
