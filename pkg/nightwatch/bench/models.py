# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Benchmark Data Models

GroundTruth holds per-frame annotated boxes plus the sequence marks (crash,
first visibility, full silhouette). BenchRecord is one report row.
"""

import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from ..frameio.frame import BoundingBox

LabeledBox = Tuple[BoundingBox, str]


@dataclass(frozen=True)
class Timeline:
    """Sequence marks converted to seconds."""
    fps: float
    crash_seconds: Optional[float] = None
    visible_to_crash: Optional[float] = None
    silhouette_to_crash: Optional[float] = None


@dataclass
class GroundTruth:
    boxes: Dict[int, List[LabeledBox]] = field(default_factory=dict)
    crash_frame: Optional[int] = None
    first_visible_frame: Optional[int] = None
    full_silhouette_frame: Optional[int] = None
    fps: float = 24.0

    def __post_init__(self):
        if not self.fps > 0:
            raise ValueError(f"fps must be > 0, got {self.fps}")
        for name in ("crash_frame", "first_visible_frame", "full_silhouette_frame"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise ValueError(f"{name} must be >= 0, got {value}")

    def boxes_at(self, frame: int) -> List[LabeledBox]:
        return self.boxes.get(frame, [])

    def add(self, frame: int, bbox: BoundingBox, label: str = "person") -> None:
        self.boxes.setdefault(frame, []).append((bbox, label))

    @property
    def annotated_frames(self) -> List[int]:
        return sorted(self.boxes)

    def validate(self, frame_count: int, width: int, height: int) -> None:
        """
        Raises:
            ValueError: If an annotated frame is past the sequence or a box leaves the frame
        """
        for frame, entries in self.boxes.items():
            if frame >= frame_count:
                raise ValueError(f"Ground truth frame {frame} is beyond the {frame_count}-frame sequence")
            for bbox, _ in entries:
                if not bbox.fits(width, height):
                    raise ValueError(f"Ground truth box {bbox.as_list()} at frame {frame} leaves the frame")
        if self.crash_frame is not None and self.crash_frame >= frame_count:
            raise ValueError(f"crash_frame {self.crash_frame} is beyond the {frame_count}-frame sequence")

    def timeline(self) -> Timeline:
        def to_crash(mark: Optional[int]) -> Optional[float]:
            if mark is None or self.crash_frame is None or mark > self.crash_frame:
                return None
            return (self.crash_frame - mark) / self.fps

        crash = None if self.crash_frame is None else self.crash_frame / self.fps
        return Timeline(
            fps=self.fps,
            crash_seconds=crash,
            visible_to_crash=to_crash(self.first_visible_frame),
            silhouette_to_crash=to_crash(self.full_silhouette_frame),
        )


def _optional_float(name: str, value: Optional[float]) -> Optional[float]:
    if value is None:
        return None
    value = float(value)
    if not math.isfinite(value) or value < 0:
        raise ValueError(f"{name} must be a finite non-negative number, got {value!r}")
    return value


@dataclass(frozen=True)
class BenchRecord:
    """
    One report row. Timing fields are None for external detectors whose
    processing time is unknown.
    """
    method: str
    total_seconds: Optional[float] = None
    fps: Optional[float] = None
    first_detection_frame: Optional[int] = None
    seconds_before_crash: Optional[float] = None

    def __post_init__(self):
        if not self.method:
            raise ValueError("BenchRecord method must not be empty")
        object.__setattr__(self, "total_seconds", _optional_float("total_seconds", self.total_seconds))
        object.__setattr__(self, "fps", _optional_float("fps", self.fps))
        object.__setattr__(
            self, "seconds_before_crash", _optional_float("seconds_before_crash", self.seconds_before_crash)
        )
        if self.seconds_before_crash is not None and self.first_detection_frame is None:
            raise ValueError("seconds_before_crash requires first_detection_frame")

    @classmethod
    def timed(cls, method: str, frame_count: int, total_seconds: float, **kwargs) -> "BenchRecord":
        """Record with fps = frame_count / total_seconds."""
        if frame_count <= 0:
            raise ValueError(f"frame_count must be > 0, got {frame_count}")
        if not total_seconds > 0:
            raise ValueError(f"total_seconds must be > 0, got {total_seconds}")
        return cls(method, total_seconds, frame_count / total_seconds, **kwargs)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
