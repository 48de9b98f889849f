# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
NightWatch Frame I/O Module

Frames, sequences, color conversion and annotation rendering.
"""

from .annotate import MARKER_COLOR, draw_boxes
from .frame import (
    BoundingBox,
    Frame,
    FrameFormatError,
    SequenceMeta,
    frame_from_array,
    require_gray,
    to_grayscale,
)
from .pnm import encode_pnm, load_frame, save_frame
from .sequence import frame_index, list_sequence, load_sequence, save_sequence

__all__ = [
    'BoundingBox',
    'Frame',
    'FrameFormatError',
    'MARKER_COLOR',
    'SequenceMeta',
    'draw_boxes',
    'encode_pnm',
    'frame_from_array',
    'frame_index',
    'list_sequence',
    'load_frame',
    'load_sequence',
    'require_gray',
    'save_frame',
    'save_sequence',
    'to_grayscale',
]
