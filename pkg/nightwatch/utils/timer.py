# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Monotonic timing helpers for the benchmark harness.
"""

import time
from typing import List, Optional


class Stopwatch:
    """
    Monotonic wall-clock stopwatch with optional lap recording.

    Usage:
        with Stopwatch() as watch:
            for frame in frames:
                method.process(frame)
                watch.lap()
        watch.elapsed  # seconds
    """

    def __init__(self):
        self._start: Optional[float] = None
        self._stop: Optional[float] = None
        self._last: Optional[float] = None
        self.laps: List[float] = []

    def start(self) -> "Stopwatch":
        self._start = self._last = time.perf_counter()
        self._stop = None
        self.laps = []
        return self

    def lap(self) -> float:
        """Record the time since the previous lap (or start)."""
        if self._start is None:
            raise RuntimeError("Stopwatch has not been started")
        now = time.perf_counter()
        duration = now - self._last
        self.laps.append(duration)
        self._last = now
        return duration

    def stop(self) -> float:
        if self._start is None:
            raise RuntimeError("Stopwatch has not been started")
        self._stop = time.perf_counter()
        return self.elapsed

    @property
    def elapsed(self) -> float:
        if self._start is None:
            return 0.0
        end = self._stop if self._stop is not None else time.perf_counter()
        return end - self._start

    def __enter__(self) -> "Stopwatch":
        return self.start()

    def __exit__(self, exc_type, exc, tb) -> None:
        self.stop()
