# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
FrameMethod: Frame Processing Lifecycle

Base interface for every technique the harness can run over a sequence,
following the three-phase lifecycle:
initialize → process (once per frame) → finalize

Design notes:
- initialize() receives all run parameters via `context` and resets every
    piece of internal state. Calling it again starts a fresh run; the harness
    relies on this to separate warmup from the timed pass.
- process() is called once per frame in temporal order. Stateless methods
    (stateful = False) may be called from several threads at once; stateful
    methods (background models) must see frames sequentially.
- finalize() returns the run payload and does not release the parameters, so
    an instance can be re-initialized for another run.
"""

from abc import ABC, abstractmethod
from datetime import datetime, timezone
from typing import Any, Dict

from ..frameio.frame import Frame


class FrameMethod(ABC):
    """
    Base lifecycle interface for all frame methods.

    Subclasses implement _setup() and _apply(); the public lifecycle methods
    enforce ordering and keep the frame count.
    """

    name: str = "frame-method"
    stateful: bool = False
    # "frame", "corners", "boxes" or "detections"
    output_kind: str = "frame"

    def __init__(self):
        self._initialized = False
        self._executed = False
        self.frames_processed = 0

    def initialize(self, context: Dict[str, Any]) -> None:
        """
        Prepare the method for a run.

        Args:
            context: Run inputs. Recognized keys are method specific; the
                harness always provides 'width' and 'height' of the sequence.

        Raises:
            ValueError: If context fields are missing or invalid.
        """
        self._setup(context)
        self.frames_processed = 0
        self._initialized = True
        self._executed = False

    def process(self, frame: Frame) -> Any:
        """
        Process one frame.

        Returns:
            Method-specific output: a Frame, a list of boxes or detections.

        Raises:
            RuntimeError: If process() is called before initialize().
        """
        if not self._initialized:
            raise RuntimeError("initialize() must be called before process()")
        result = self._apply(frame)
        self.frames_processed += 1
        self._executed = True
        return result

    def finalize(self) -> Dict[str, Any]:
        """
        Close the run and return the result payload.

        Returns:
            {"status": "complete", "timestamp": ISO-8601, "result": {...}}

        Raises:
            RuntimeError: If finalize() is called before any process().
        """
        if not self._executed:
            raise RuntimeError("process() must be called before finalize()")
        return {
            "status": "complete",
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "result": {"method": self.name, "frames": self.frames_processed}
        }

    @abstractmethod
    def _setup(self, context: Dict[str, Any]) -> None:
        """Validate parameters and reset state."""

    @abstractmethod
    def _apply(self, frame: Frame) -> Any:
        """Transform a single frame."""
