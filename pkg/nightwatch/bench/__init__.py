# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
NightWatch Benchmark Module

Method timing, first-detection evaluation against ground truth, external
detector ingestion, reports and synthetic night scenes.
"""

from .evaluation import DetectionTable, eval_first_detection, group_by_frame, seconds_before_crash
from .ground_truth import GroundTruthError, load_ground_truth, parse_ground_truth, save_ground_truth
from .ingest import IngestError, ingest_external_detections
from .models import BenchRecord, GroundTruth, Timeline
from .registry import (
    ENHANCE_SUITE,
    SUITES,
    ExternalDetector,
    MethodSettings,
    build_method,
    enhance_methods,
    run_suite,
)
from .report import REPORT_COLUMNS, read_report, write_report, write_report_notes
from .synthetic import SceneParams, render_scene, training_windows, write_scene, write_training_set
from .timing import time_method

__all__ = [
    'BenchRecord',
    'DetectionTable',
    'ENHANCE_SUITE',
    'ExternalDetector',
    'GroundTruth',
    'GroundTruthError',
    'IngestError',
    'MethodSettings',
    'REPORT_COLUMNS',
    'SUITES',
    'SceneParams',
    'Timeline',
    'build_method',
    'enhance_methods',
    'eval_first_detection',
    'group_by_frame',
    'ingest_external_detections',
    'load_ground_truth',
    'parse_ground_truth',
    'read_report',
    'render_scene',
    'run_suite',
    'save_ground_truth',
    'seconds_before_crash',
    'time_method',
    'training_windows',
    'write_report',
    'write_report_notes',
    'write_scene',
    'write_training_set',
]
