# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
NightWatch Enhancement Module

Per-frame photometric enhancement: gamma correction, global histogram
equalization, CLAHE and binary thresholding. All are LUT based.
"""

from .gamma import GammaParams, gamma_correct, gamma_lut
from .histogram import ClaheParams, clahe, equalization_lut, hist_equalize
from .methods import ClaheMethod, GammaMethod, HistEqualizeMethod, ThresholdMethod
from .threshold import binary_threshold

__all__ = [
    'ClaheMethod',
    'ClaheParams',
    'GammaMethod',
    'GammaParams',
    'HistEqualizeMethod',
    'ThresholdMethod',
    'binary_threshold',
    'clahe',
    'equalization_lut',
    'gamma_correct',
    'gamma_lut',
    'hist_equalize',
]
