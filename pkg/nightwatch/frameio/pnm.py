# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
PGM / PPM Codec

Binary netpbm images (P5 gray, P6 RGB) with maxval 255 are the native,
bit-exact format. PNG is decoded and encoded through Pillow as a
convenience only.
"""

from pathlib import Path
from typing import List, Tuple, Union

import numpy as np
from PIL import Image

from ..logging.logger import get_logger
from .frame import Frame, FrameFormatError

logger = get_logger(__name__, component="frameio")

PathLike = Union[str, Path]

_MAGIC_CHANNELS = {b"P5": 1, b"P6": 3}
_WHITESPACE = b" \t\r\n\x0b\x0c"


def _read_header(raw: bytes, path: PathLike) -> Tuple[bytes, List[int], int]:
    """
    Parse magic, width, height and maxval.

    Comments ('#' to end of line) may appear between tokens. Returns the
    magic, the three integers and the offset of the first data byte.
    """
    tokens: List[bytes] = []
    pos = 0
    size = len(raw)
    while len(tokens) < 4:
        while pos < size and raw[pos] in _WHITESPACE:
            pos += 1
        if pos < size and raw[pos:pos + 1] == b"#":
            while pos < size and raw[pos] not in b"\r\n":
                pos += 1
            continue
        start = pos
        while pos < size and raw[pos] not in _WHITESPACE and raw[pos:pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise FrameFormatError(f"Malformed header in {path}: unexpected end of file")
        tokens.append(raw[start:pos])

    # exactly one whitespace byte separates maxval from the raster
    if pos >= size or raw[pos] not in _WHITESPACE:
        raise FrameFormatError(f"Malformed header in {path}: missing separator before data")
    pos += 1

    magic = tokens[0]
    if magic not in _MAGIC_CHANNELS:
        raise FrameFormatError(f"Malformed header in {path}: unsupported magic {magic!r}")
    try:
        values = [int(token) for token in tokens[1:]]
    except ValueError:
        raise FrameFormatError(f"Malformed header in {path}: non-numeric field") from None
    return magic, values, pos


def _load_pnm(raw: bytes, path: PathLike) -> Frame:
    magic, (width, height, maxval), offset = _read_header(raw, path)
    if width <= 0 or height <= 0:
        raise FrameFormatError(f"Malformed header in {path}: dimensions {width}x{height}")
    if maxval != 255:
        raise FrameFormatError(f"unsupported maxval {maxval} in {path}")

    channels = _MAGIC_CHANNELS[magic]
    expected = width * height * channels
    data = raw[offset:offset + expected]
    if len(data) < expected:
        raise FrameFormatError(f"Truncated data in {path}: expected {expected} bytes, got {len(data)}")

    pixels = np.frombuffer(data, dtype=np.uint8).copy()
    shape = (height, width) if channels == 1 else (height, width, 3)
    return Frame(pixels.reshape(shape))


def _load_png(path: Path) -> Frame:
    try:
        with Image.open(path) as image:
            if image.mode in ("L", "1", "I;16", "I", "F"):
                array = np.asarray(image.convert("L"))
            else:
                array = np.asarray(image.convert("RGB"))
    except OSError as exc:
        raise FrameFormatError(f"Cannot decode {path}: {exc}") from exc
    return Frame.from_array(array)


def load_frame(path: PathLike) -> Frame:
    """
    Load a binary PGM (P5) or PPM (P6) file; PNG accepted as a convenience.

    Raises:
        FileNotFoundError: If the file does not exist
        FrameFormatError: Malformed header, truncated data or maxval != 255
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"Frame file not found: {path}")

    raw = path.read_bytes()
    if raw[:8] == b"\x89PNG\r\n\x1a\n":
        return _load_png(path)
    return _load_pnm(raw, path)


def encode_pnm(frame: Frame) -> bytes:
    """Serialize a frame as P5 (gray) or P6 (RGB) bytes."""
    magic = "P5" if frame.channels == 1 else "P6"
    header = f"{magic}\n{frame.width} {frame.height}\n255\n".encode("ascii")
    return header + frame.data


def save_frame(frame: Frame, path: PathLike) -> None:
    """
    Write a frame. Gray frames become P5, RGB frames P6; a '.png' suffix
    selects PNG instead.

    Raises:
        OSError: If the destination cannot be written
    """
    path = Path(path)
    if path.suffix.lower() == ".png":
        Image.fromarray(frame.pixels).save(path, format="PNG")
    else:
        path.write_bytes(encode_pnm(frame))
    logger.debug("Frame saved", extra={'extra_fields': {'path': str(path), 'channels': frame.channels}})


def default_suffix(frame: Frame) -> str:
    return ".pgm" if frame.channels == 1 else ".ppm"
