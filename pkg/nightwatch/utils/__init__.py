# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
NightWatch Utils Module

Provides configuration loading, timing and validation helpers.
"""

from .config_loader import ConfigLoader
from .timer import Stopwatch

__all__ = ['ConfigLoader', 'Stopwatch']
