# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
NightWatch: Low-light pedestrian detection toolkit

Enhancement techniques, a classical pedestrian-detection pipeline, and a
benchmark harness measuring throughput and detection timeliness on
dash-cam style frame sequences.
"""

from .__version__ import __version__

__all__ = [
    '__version__',
    'bench',
    'cli',
    'core',
    'detect',
    'enhance',
    'frameio',
    'logging',
    'monitoring',
    'motionedge',
    'segment',
    'utils'
]
