# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

from .metrics import (
    start_metrics_server,
    track_detections,
    track_frame_latency,
    track_frames,
)

__all__ = ['start_metrics_server', 'track_detections', 'track_frame_latency', 'track_frames']
