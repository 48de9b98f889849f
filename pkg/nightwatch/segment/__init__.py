# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
NightWatch Segmentation Module

Adaptive binarization, block-based connected component labeling and the
pedestrian candidate filter.
"""

from .adaptive import adaptive_binarize, integral_image
from .candidates import CandidateFilterParams, filter_candidates, pedestrian_candidates
from .labeling import Component, label_components
from .methods import SegmentationMethod

__all__ = [
    'CandidateFilterParams',
    'Component',
    'SegmentationMethod',
    'adaptive_binarize',
    'filter_candidates',
    'integral_image',
    'label_components',
    'pedestrian_candidates',
]
