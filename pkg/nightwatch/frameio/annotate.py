# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Annotation rendering: 1-px box outlines with text labels.
"""

from typing import Iterable, Optional, Sequence, Tuple

import numpy as np
from PIL import Image, ImageDraw, ImageFont

from .frame import BoundingBox, Frame

MARKER_COLOR = (0, 255, 0)
LABEL_HEIGHT = 11

BoxSpec = Tuple[BoundingBox, str, Optional[float]]

_font = None


def _default_font():
    global _font
    if _font is None:
        _font = ImageFont.load_default()
    return _font


def _as_rgb(frame: Frame) -> np.ndarray:
    if frame.channels == 3:
        return frame.pixels.copy()
    return np.repeat(frame.pixels[:, :, None], 3, axis=2)


def draw_boxes(frame: Frame, boxes: Iterable[BoxSpec],
               color: Sequence[int] = MARKER_COLOR) -> Frame:
    """
    Render boxes onto a 3-channel copy of the frame.

    Boxes are clipped to the frame; labels are written just above the box
    (or inside its top edge when there is no room). Empty labels draw no
    text. The input frame is not modified.
    """
    canvas = _as_rgb(frame)
    height, width = canvas.shape[:2]
    texts = []

    for box, label, score in boxes:
        clipped = box.clipped(width, height)
        if clipped is None:
            continue
        x0, y0 = clipped.x, clipped.y
        x1, y1 = clipped.x + clipped.w - 1, clipped.y + clipped.h - 1
        canvas[y0, x0:x1 + 1] = color
        canvas[y1, x0:x1 + 1] = color
        canvas[y0:y1 + 1, x0] = color
        canvas[y0:y1 + 1, x1] = color

        text = label or ""
        if text and score is not None:
            text = f"{text} {score:.2f}"
        if text:
            ty = y0 - LABEL_HEIGHT if y0 >= LABEL_HEIGHT else y0 + 1
            texts.append(((x0 + 1, ty), text))

    if texts:
        image = Image.fromarray(canvas)
        draw = ImageDraw.Draw(image)
        for position, text in texts:
            draw.text(position, text, fill=tuple(color), font=_default_font())
        canvas = np.asarray(image).copy()

    return Frame(canvas)
