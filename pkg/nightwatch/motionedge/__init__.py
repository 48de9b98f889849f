# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
NightWatch Motion & Edge Module

Structural and temporal cues: Canny edges, Harris corners and
Gaussian-mixture background subtraction with optional shadow labeling.
"""

from .canny import CannyParams, canny, hysteresis, non_max_suppression, quantize_direction
from .gmm import (
    COMPLEXITY_PRIOR,
    MASK_BACKGROUND,
    MASK_FOREGROUND,
    MASK_SHADOW,
    BackgroundModel,
    GmmParams,
    gmm_init,
    gmm_update,
)
from .harris import HarrisParams, harris, harris_response
from .methods import CannyMethod, HarrisMethod, MotionMethod

__all__ = [
    'BackgroundModel',
    'COMPLEXITY_PRIOR',
    'CannyMethod',
    'CannyParams',
    'GmmParams',
    'HarrisMethod',
    'HarrisParams',
    'MASK_BACKGROUND',
    'MASK_FOREGROUND',
    'MASK_SHADOW',
    'MotionMethod',
    'canny',
    'gmm_init',
    'gmm_update',
    'harris',
    'harris_response',
    'hysteresis',
    'non_max_suppression',
    'quantize_direction',
]
