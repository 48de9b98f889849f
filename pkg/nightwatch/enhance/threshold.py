# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Binary thresholding: v >= t -> 255, else 0.
"""

import numpy as np

from ..frameio.frame import Frame, require_gray


def threshold_lut(t: int) -> np.ndarray:
    if isinstance(t, bool) or not isinstance(t, (int, np.integer)) or not 0 <= t <= 255:
        raise ValueError(f"threshold must be an integer in [0, 255], got {t!r}")
    return np.where(np.arange(256) >= t, 255, 0).astype(np.uint8)


def binary_threshold(gray: Frame, t: int) -> Frame:
    pixels = require_gray(gray, "binary_threshold")
    return Frame(threshold_lut(t)[pixels])
