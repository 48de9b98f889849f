# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Prometheus metrics for NightWatch benchmark runs.
"""

from prometheus_client import Counter, Histogram, start_http_server

_metrics_started = False

frames_processed_total = Counter(
    "nightwatch_frames_processed_total",
    "Total frames processed in timed passes",
    ["method"]
)

frame_latency_seconds = Histogram(
    "nightwatch_frame_latency_seconds",
    "Per-frame processing latency in seconds",
    ["method"],
    buckets=(0.001, 0.0025, 0.005, 0.01, 0.025, 0.05, 0.1, 0.25, 0.5, 1.0, 2.5)
)

detections_total = Counter(
    "nightwatch_detections_total",
    "Total detections emitted",
    ["method"]
)


def start_metrics_server(port: int = 9108, addr: str = "127.0.0.1"):
    """Start Prometheus metrics server if not already running."""
    global _metrics_started

    if _metrics_started:
        return

    start_http_server(port, addr=addr)
    _metrics_started = True


def track_frames(method: str, count: int):
    """Track frames processed by a method."""
    frames_processed_total.labels(method=method).inc(count)


def track_frame_latency(method: str, duration_seconds: float):
    """Track one frame's processing latency."""
    frame_latency_seconds.labels(method=method).observe(duration_seconds)


def track_detections(method: str, count: int):
    """Track detections emitted by a detector."""
    detections_total.labels(method=method).inc(count)
