# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Frame Data Models

Immutable pixel carrier plus the geometric records every module shares.
Frames wrap a read-only uint8 numpy array of shape (H, W) for gray or
(H, W, 3) for RGB; samples are row-major from the top-left pixel.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np


class FrameFormatError(ValueError):
    """Raised when an image file cannot be decoded into a Frame."""
    pass


@dataclass(frozen=True, eq=False)
class Frame:
    """
    8-bit raster with 1 (gray) or 3 (RGB) channels.

    Construct with Frame.from_array() or Frame.from_samples(); the
    constructor itself never copies, it only validates and freezes.
    """
    pixels: np.ndarray

    def __post_init__(self):
        pixels = self.pixels
        if not isinstance(pixels, np.ndarray) or pixels.dtype != np.uint8:
            raise ValueError("Frame pixels must be a uint8 numpy array")
        if pixels.ndim == 3 and pixels.shape[2] == 1:
            pixels = pixels[:, :, 0]
            object.__setattr__(self, "pixels", pixels)
        if pixels.ndim not in (2, 3) or (pixels.ndim == 3 and pixels.shape[2] != 3):
            raise ValueError(f"Frame must be HxW or HxWx3, got shape {pixels.shape}")
        if pixels.shape[0] <= 0 or pixels.shape[1] <= 0:
            raise ValueError(f"Frame dimensions must be positive, got {pixels.shape[:2]}")
        pixels.setflags(write=False)

    @classmethod
    def from_array(cls, array: np.ndarray, copy: bool = True) -> "Frame":
        """
        Wrap a numpy array as a Frame.

        Args:
            array: HxW or HxWx3 array of values in [0, 255]
            copy: Copy the data (default). Pass False only for arrays the
                caller owns and will not modify afterwards.
        """
        array = np.asarray(array)
        if array.dtype != np.uint8:
            if array.size and (array.min() < 0 or array.max() > 255):
                raise ValueError("Frame samples must lie in [0, 255]")
            array = array.astype(np.uint8)
            copy = False
        data = np.array(array, dtype=np.uint8, order="C", copy=True) if copy else np.ascontiguousarray(array)
        return cls(data)

    @classmethod
    def from_samples(cls, width: int, height: int, channels: int,
                     samples: Union[bytes, Sequence[int]]) -> "Frame":
        """Build a frame from a flat row-major sample sequence."""
        if width <= 0 or height <= 0:
            raise ValueError(f"Frame dimensions must be positive, got {width}x{height}")
        if channels not in (1, 3):
            raise ValueError(f"channels must be 1 or 3, got {channels}")
        if isinstance(samples, (bytes, bytearray, memoryview)):
            flat = np.frombuffer(bytes(samples), dtype=np.uint8)
        else:
            flat = np.asarray(samples)
            if flat.size and (flat.min() < 0 or flat.max() > 255):
                raise ValueError("Frame samples must lie in [0, 255]")
            flat = flat.astype(np.uint8)
        expected = width * height * channels
        if flat.size != expected:
            raise ValueError(f"Expected {expected} samples for {width}x{height}x{channels}, got {flat.size}")
        shape = (height, width) if channels == 1 else (height, width, 3)
        return cls(flat.reshape(shape).copy())

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    @property
    def channels(self) -> int:
        return 1 if self.pixels.ndim == 2 else 3

    @property
    def data(self) -> bytes:
        """Row-major samples, length width*height*channels."""
        return self.pixels.tobytes()

    def to_array(self) -> np.ndarray:
        """The pixel array itself (read-only view, no copy)."""
        return self.pixels

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Frame):
            return NotImplemented
        return self.pixels.shape == other.pixels.shape and bool(np.array_equal(self.pixels, other.pixels))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Frame(width={self.width}, height={self.height}, channels={self.channels})"


def frame_from_array(array: np.ndarray) -> Frame:
    """Copying constructor for callers holding their own arrays."""
    return Frame.from_array(array, copy=True)


@dataclass(frozen=True)
class BoundingBox:
    """Axis-aligned pixel rectangle; (x, y) is the top-left pixel."""
    x: int
    y: int
    w: int
    h: int

    def __post_init__(self):
        if self.x < 0 or self.y < 0:
            raise ValueError(f"BoundingBox origin must be non-negative, got ({self.x}, {self.y})")
        if self.w <= 0 or self.h <= 0:
            raise ValueError(f"BoundingBox size must be positive, got {self.w}x{self.h}")

    @property
    def area(self) -> int:
        return self.w * self.h

    @property
    def bottom(self) -> int:
        """Last row covered by the box."""
        return self.y + self.h - 1

    def fits(self, width: int, height: int) -> bool:
        return self.x + self.w <= width and self.y + self.h <= height

    def clipped(self, width: int, height: int) -> Optional["BoundingBox"]:
        """Intersection with a width x height frame, or None when empty."""
        x0, y0 = max(self.x, 0), max(self.y, 0)
        x1, y1 = min(self.x + self.w, width), min(self.y + self.h, height)
        if x1 <= x0 or y1 <= y0:
            return None
        return BoundingBox(x0, y0, x1 - x0, y1 - y0)

    def as_list(self) -> list:
        return [self.x, self.y, self.w, self.h]


@dataclass(frozen=True)
class SequenceMeta:
    """Sequence-level facts: frame rate, length and where the frames came from."""
    fps: float = 24.0
    frame_count: int = 0
    source: str = ""
    frame_indices: Tuple[int, ...] = ()

    def __post_init__(self):
        if not self.fps > 0:
            raise ValueError(f"fps must be > 0, got {self.fps}")
        if self.frame_count < 0:
            raise ValueError(f"frame_count must be >= 0, got {self.frame_count}")


def to_grayscale(frame: Frame) -> Frame:
    """
    BT.601 luma, rounded half up: round(0.299 R + 0.587 G + 0.114 B).

    Gray input is returned unchanged (same object).
    """
    if frame.channels == 1:
        return frame
    rgb = frame.pixels.astype(np.uint32)
    gray = (299 * rgb[:, :, 0] + 587 * rgb[:, :, 1] + 114 * rgb[:, :, 2] + 500) // 1000
    return Frame(gray.astype(np.uint8))


def require_gray(frame: Frame, operation: str) -> np.ndarray:
    """Return the 2-D array of a 1-channel frame or raise."""
    if frame.channels != 1:
        raise ValueError(f"{operation} requires a 1-channel frame, got {frame.channels} channels")
    return frame.pixels
