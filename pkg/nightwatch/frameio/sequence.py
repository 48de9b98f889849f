# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Frame Sequence I/O

Sequences are directories of frame dumps named `<stem>_<zero-padded index>.<ext>`
as produced by video splitters. The frame index is the last integer run in
the file name.
"""

import glob
import re
from pathlib import Path
from typing import Iterable, List, Tuple, Union

from ..logging.logger import get_logger
from .frame import Frame, SequenceMeta
from .pnm import default_suffix, load_frame, save_frame

logger = get_logger(__name__, component="frameio")

FRAME_SUFFIXES = (".pgm", ".ppm", ".png")
_LAST_INT = re.compile(r"(\d+)(?!.*\d)")


def frame_index(path: Union[str, Path]) -> int:
    """Index encoded in a frame file name (last integer run of the stem)."""
    match = _LAST_INT.search(Path(path).stem)
    if match is None:
        raise ValueError(f"No frame index in file name: {Path(path).name}")
    return int(match.group(1))


def list_sequence(pattern: Union[str, Path]) -> List[Path]:
    """
    Resolve a directory or glob pattern to frame files ordered by index.

    Raises:
        FileNotFoundError: If nothing matches
    """
    pattern = str(pattern)
    if Path(pattern).is_dir():
        paths = [p for p in Path(pattern).iterdir()
                 if p.is_file() and p.suffix.lower() in FRAME_SUFFIXES]
    else:
        paths = [Path(p) for p in glob.glob(pattern) if Path(p).is_file()]

    if not paths:
        raise FileNotFoundError(f"No frames match {pattern}")

    return sorted(paths, key=lambda p: (frame_index(p), p.name))


def load_sequence(pattern: Union[str, Path], fps: float = 24.0) -> Tuple[List[Frame], SequenceMeta]:
    """
    Load every frame matching `pattern`, ordered by file-name index.

    Raises:
        FileNotFoundError: If no file matches
        ValueError: If frames differ in dimensions or channel count
    """
    if not fps > 0:
        raise ValueError(f"fps must be > 0, got {fps}")

    paths = list_sequence(pattern)
    frames: List[Frame] = []
    for path in paths:
        frame = load_frame(path)
        if frames and (frame.width, frame.height, frame.channels) != (
                frames[0].width, frames[0].height, frames[0].channels):
            raise ValueError(
                f"Dimension mismatch: {path.name} is {frame.width}x{frame.height}x{frame.channels}, "
                f"sequence is {frames[0].width}x{frames[0].height}x{frames[0].channels}"
            )
        frames.append(frame)

    meta = SequenceMeta(
        fps=float(fps),
        frame_count=len(frames),
        source=str(pattern),
        frame_indices=tuple(frame_index(p) for p in paths)
    )
    logger.info(
        "Sequence loaded",
        extra={'extra_fields': {'source': str(pattern), 'frames': len(frames),
                                'width': frames[0].width, 'height': frames[0].height}}
    )
    return frames, meta


def save_sequence(frames: Iterable[Frame], directory: Union[str, Path],
                  stem: str = "frame", start: int = 0) -> List[Path]:
    """Write frames as `<stem>_%04d.pgm|ppm`; the inverse of load_sequence."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for offset, frame in enumerate(frames):
        path = directory / f"{stem}_{start + offset:04d}{default_suffix(frame)}"
        save_frame(frame, path)
        written.append(path)
    return written
