# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
NightWatch Core Module

Provides the frame method lifecycle shared by all techniques.
"""

from .base_class import FrameMethod

__all__ = ['FrameMethod']
