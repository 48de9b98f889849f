# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Method Timing

One untimed warmup over the first `warmup_frames` frames, then one timed
pass over the whole sequence on a monotonic clock. The method is
re-initialized before each pass, so stateful methods see every frame of the
timed pass exactly once and in order.

With jobs > 1 a stateless method's timed pass fans frames out to a thread
pool; outputs keep frame order. Stateful methods always run sequentially.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, Optional, Sequence

from ..core.base_class import FrameMethod
from ..frameio.frame import Frame
from ..logging import bind, get_logger
from ..monitoring import track_frame_latency, track_frames
from ..utils.timer import Stopwatch
from .models import BenchRecord

logger = get_logger(__name__, component="bench")


def _context_for(frames: Sequence[Frame], context: Optional[Dict[str, Any]]) -> Dict[str, Any]:
    merged = {"width": frames[0].width, "height": frames[0].height, "frame_count": len(frames)}
    merged.update(context or {})
    return merged


def _timed_call(method: FrameMethod, frame: Frame):
    with Stopwatch() as watch:
        result = method.process(frame)
    return result, watch.elapsed


def time_method(method: FrameMethod, frames: Sequence[Frame], warmup_frames: int = 5,
                name: Optional[str] = None, context: Optional[Dict[str, Any]] = None,
                outputs: Optional[List[Any]] = None, jobs: int = 1) -> BenchRecord:
    """
    Time one method over a sequence.

    Args:
        method: Frame method to run
        frames: The sequence, in temporal order
        warmup_frames: Frames processed (untimed) before the timed pass
        name: Report name; defaults to method.name
        context: Extra initialize() context
        outputs: When given, per-frame outputs of the timed pass are appended
        jobs: Worker threads for stateless methods

    Raises:
        ValueError: If the sequence is empty or warmup_frames is negative
    """
    if not frames:
        raise ValueError("Cannot time a method over an empty sequence")
    if warmup_frames < 0:
        raise ValueError(f"warmup_frames must be >= 0, got {warmup_frames}")
    name = name or method.name
    run_log = bind(logger, method=name)
    ctx = _context_for(frames, context)

    if warmup_frames:
        method.initialize(ctx)
        for frame in frames[:warmup_frames]:
            method.process(frame)

    parallel = jobs > 1 and not method.stateful
    if jobs > 1 and method.stateful:
        run_log.warning(f"{name} is stateful; ignoring jobs={jobs}")

    method.initialize(ctx)
    if parallel:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            with Stopwatch() as watch:
                timed = list(pool.map(lambda f: _timed_call(method, f), frames))
        results = [r for r, _ in timed]
        latencies = [t for _, t in timed]
    else:
        results = []
        with Stopwatch() as watch:
            for frame in frames:
                results.append(method.process(frame))
                watch.lap()
        latencies = watch.laps
    method.finalize()

    record = BenchRecord.timed(name, len(frames), watch.elapsed)
    track_frames(name, len(frames))
    for latency in latencies:
        track_frame_latency(name, latency)
    if outputs is not None:
        outputs.extend(results)

    run_log.info(
        f"Timed {name}",
        extra={"extra_fields": {
            "frames": len(frames),
            "seconds": record.total_seconds,
            "fps": record.fps,
            "jobs": jobs if parallel else 1
        }}
    )
    return record
