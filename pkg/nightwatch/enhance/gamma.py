# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Gamma Correction (Power Law Transform)

V_out = V_in ^ (1/gamma) on samples normalized to [0, 1]: gamma > 1
lightens, gamma < 1 darkens. The remap is a 256-entry LUT applied to every
channel independently, so RGB and gray frames follow the same curve.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..frameio.frame import Frame
from ..utils.validators import require_positive


@dataclass(frozen=True)
class GammaParams:
    gamma: float = 3.5

    def __post_init__(self):
        require_positive("gamma", self.gamma)


@lru_cache(maxsize=64)
def _gamma_table(gamma: float) -> np.ndarray:
    levels = np.arange(256, dtype=np.float64) / 255.0
    table = np.floor(255.0 * np.power(levels, 1.0 / gamma) + 0.5)
    table = np.clip(table, 0, 255).astype(np.uint8)
    table[0], table[255] = 0, 255
    table.setflags(write=False)
    return table


def gamma_lut(params: GammaParams) -> np.ndarray:
    """The 256-entry lookup table round(255 * (v/255) ** (1/gamma))."""
    return _gamma_table(float(params.gamma))


def gamma_correct(frame: Frame, params: GammaParams) -> Frame:
    """Apply the gamma LUT to every sample of the frame."""
    return Frame(gamma_lut(params)[frame.pixels])
