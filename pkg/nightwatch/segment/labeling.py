# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Block-Based Connected Component Labeling

The binary frame is scanned as 2x2 blocks. All set pixels of one block
are mutually 8-adjacent, so labels are assigned per block and only four
block neighbors need a decision:

    +---+---+---+        block X = | a b |
    | P | Q | R |                  | c d |
    +---+---+---+
    | S | X |            X-P: a and P.d
    +---+---+            X-Q: (a or b) and (Q.c or Q.d)
                         X-R: b and R.c
                         X-S: (a or c) and (S.b or S.d)

The decisions are evaluated for every block at once; the resulting block
equivalences are resolved with a union-find forest that hooks larger roots
under smaller ones and compresses paths by pointer jumping. Labels are
dense, 1..n, numbered in raster order of each component's first block.
"""

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from scipy import ndimage

from ..frameio.frame import BoundingBox, Frame


@dataclass(frozen=True)
class Component:
    label: int
    area: int
    bbox: BoundingBox
    area_ratio: float

    @property
    def bottom_row(self) -> int:
        return self.bbox.bottom


class UnionFind:
    """Array-backed union-find over block indices, operated in bulk."""

    def __init__(self, size: int):
        self.parent = np.arange(size, dtype=np.int64)

    def compress(self) -> None:
        while True:
            jumped = self.parent[self.parent]
            if np.array_equal(jumped, self.parent):
                return
            self.parent = jumped

    def find(self, nodes: np.ndarray) -> np.ndarray:
        self.compress()
        return self.parent[nodes]

    def union_all(self, left: np.ndarray, right: np.ndarray) -> None:
        """Merge every (left[i], right[i]) pair."""
        while True:
            root_l, root_r = self.find(left), self.find(right)
            pending = root_l != root_r
            if not pending.any():
                return
            high = np.maximum(root_l[pending], root_r[pending])
            low = np.minimum(root_l[pending], root_r[pending])
            np.minimum.at(self.parent, high, low)


def _block_edges(fg: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Block occupancy plus the (block, neighbor) index pairs that connect."""
    a, b = fg[0::2, 0::2], fg[0::2, 1::2]
    c, d = fg[1::2, 0::2], fg[1::2, 1::2]
    occupied = a | b | c | d
    rows, cols = occupied.shape
    index = np.arange(rows * cols, dtype=np.int64).reshape(rows, cols)

    top, bottom = a | b, c | d
    left, right = a | c, b | d

    pairs = [
        # X-S
        (left[:, 1:] & right[:, :-1], index[:, 1:], index[:, :-1]),
        # X-Q
        (top[1:, :] & bottom[:-1, :], index[1:, :], index[:-1, :]),
        # X-P
        (a[1:, 1:] & d[:-1, :-1], index[1:, 1:], index[:-1, :-1]),
        # X-R
        (b[1:, :-1] & c[:-1, 1:], index[1:, :-1], index[:-1, 1:]),
    ]
    src = np.concatenate([x[m] for m, x, _ in pairs])
    dst = np.concatenate([y[m] for m, _, y in pairs])
    return occupied, src, dst


def _validate_binary(pixels: np.ndarray) -> np.ndarray:
    fg = pixels == 255
    if not np.all(fg | (pixels == 0)):
        raise ValueError("label_components requires a binary frame with values in {0, 255}")
    return fg


def label_components(binary: Frame) -> Tuple[np.ndarray, List[Component]]:
    """
    8-connected components of the 255-pixels.

    Returns:
        (label map of shape HxW with 0 for background and 1..n for
        components, list of Component records ordered by label)

    Raises:
        ValueError: If the frame is not 1-channel or not binary
    """
    if binary.channels != 1:
        raise ValueError("label_components requires a 1-channel frame")
    pixels = binary.pixels
    height, width = pixels.shape
    fg = _validate_binary(pixels)

    padded = np.zeros((height + (height & 1), width + (width & 1)), dtype=bool)
    padded[:height, :width] = fg

    occupied, src, dst = _block_edges(padded)
    forest = UnionFind(occupied.size)
    if src.size:
        forest.union_all(src, dst)

    roots = forest.find(np.arange(occupied.size))
    block_labels = np.zeros(occupied.size, dtype=np.int32)
    if occupied.any():
        _, dense = np.unique(roots[occupied.ravel()], return_inverse=True)
        block_labels[occupied.ravel()] = dense.ravel().astype(np.int32) + 1
    block_labels = block_labels.reshape(occupied.shape)

    label_map = np.repeat(np.repeat(block_labels, 2, axis=0), 2, axis=1)[:height, :width]
    label_map = np.where(fg, label_map, 0).astype(np.int32)
    return label_map, component_stats(label_map)


def component_stats(label_map: np.ndarray) -> List[Component]:
    """Area, bounding box and area ratio for labels 1..n."""
    count = int(label_map.max()) if label_map.size else 0
    if count == 0:
        return []
    areas = np.bincount(label_map.ravel(), minlength=count + 1)
    components = []
    for label, slices in enumerate(ndimage.find_objects(label_map), start=1):
        if slices is None:
            continue
        rows, cols = slices
        bbox = BoundingBox(cols.start, rows.start, cols.stop - cols.start, rows.stop - rows.start)
        area = int(areas[label])
        components.append(Component(label=label, area=area, bbox=bbox, area_ratio=area / bbox.area))
    return components
