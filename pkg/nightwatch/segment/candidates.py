# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Pedestrian Candidate Filter

Five steps over a single frame:
    1. luma conversion
    2. adaptive binarization and block-based component labeling
    3. size gate: areas below min_area or above max_area are dropped
       (both limits themselves are kept)
    4. margin gate: a component whose bottom-most row falls in the top or
       bottom margin_fraction of the frame rows is dropped
    5. shape gate: components filling less than min_area_ratio of their
       bounding box are dropped
"""

from dataclasses import dataclass
from typing import Iterable, List

from ..frameio.frame import BoundingBox, Frame, to_grayscale
from ..utils.validators import require_range
from .adaptive import adaptive_binarize
from .labeling import Component, label_components


@dataclass(frozen=True)
class CandidateFilterParams:
    min_area: int = 50
    max_area: int = 10000
    margin_fraction: float = 0.10
    min_area_ratio: float = 0.5
    adaptive_window: int = 31
    adaptive_offset: int = 10

    def __post_init__(self):
        if not 0 < self.min_area < self.max_area:
            raise ValueError(
                f"Area limits must satisfy 0 < min_area < max_area, got {self.min_area}, {self.max_area}"
            )
        require_range("margin_fraction", self.margin_fraction, 0.0, 0.5,
                      low_inclusive=False, high_inclusive=False)
        require_range("min_area_ratio", self.min_area_ratio, 0.0, 1.0, low_inclusive=False)
        if self.adaptive_window < 3 or self.adaptive_window % 2 == 0:
            raise ValueError(f"adaptive_window must be odd and >= 3, got {self.adaptive_window}")


def in_margin(bottom_row: int, frame_height: int, margin_fraction: float) -> bool:
    """True when the row lies in the top or bottom margin band."""
    band = margin_fraction * frame_height
    return bottom_row < band or bottom_row >= frame_height - band


def filter_candidates(components: Iterable[Component], frame_height: int,
                      params: CandidateFilterParams = CandidateFilterParams()) -> List[Component]:
    """Apply the size, margin and shape gates. Input order is preserved."""
    survivors = []
    for component in components:
        if component.area < params.min_area or component.area > params.max_area:
            continue
        if in_margin(component.bottom_row, frame_height, params.margin_fraction):
            continue
        if component.area_ratio < params.min_area_ratio:
            continue
        survivors.append(component)
    return survivors


def pedestrian_candidates(frame: Frame,
                          params: CandidateFilterParams = CandidateFilterParams()) -> List[BoundingBox]:
    """Bounding boxes of the components that survive every gate."""
    gray = to_grayscale(frame)
    binary = adaptive_binarize(gray, params.adaptive_window, params.adaptive_offset)
    _, components = label_components(binary)
    return [c.bbox for c in filter_candidates(components, frame.height, params)]
