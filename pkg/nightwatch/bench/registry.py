# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Method registry and suite runner.

The enhancement suite lists every timed technique in report order. The
detection suite times the HOG + SVM detector (when a model is supplied) and
adds one row per ingested external detector. Methods run one after another;
two timed passes never overlap.
"""

from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence

from ..core.base_class import FrameMethod
from ..detect.export import tag_frame
from ..detect.methods import HogSvmMethod
from ..detect.models import HogParams, LinearModel, PyramidParams
from ..enhance.gamma import GammaParams
from ..enhance.histogram import ClaheParams
from ..enhance.methods import ClaheMethod, GammaMethod, HistEqualizeMethod, ThresholdMethod
from ..frameio.frame import Frame
from ..logging import get_logger
from ..monitoring import track_detections
from ..motionedge.canny import CannyParams
from ..motionedge.gmm import GmmParams
from ..motionedge.harris import HarrisParams
from ..motionedge.methods import CannyMethod, HarrisMethod, MotionMethod
from ..segment.candidates import CandidateFilterParams
from ..segment.methods import SegmentationMethod
from .evaluation import DetectionTable, eval_first_detection, group_by_frame, seconds_before_crash
from .models import BenchRecord, GroundTruth
from .timing import time_method

logger = get_logger(__name__, component="bench")

SUITES = ("enhance", "detect", "all")

ENHANCE_SUITE = (
    "Histogram Equalization",
    "Canny Edge Detection",
    "Binary Thresholding",
    "Gamma Correction",
    "CLAHE",
    "Adaptive Threshold Segmentation",
    "Motion Map (Shadows)",
    "Motion Map (No Shadows)",
    "Harris Corner Detection",
)


@dataclass(frozen=True)
class MethodSettings:
    """Parameters for every registered method."""
    gamma: GammaParams = field(default_factory=GammaParams)
    clahe: ClaheParams = field(default_factory=ClaheParams)
    threshold: int = 128
    canny: CannyParams = field(default_factory=CannyParams)
    harris: HarrisParams = field(default_factory=HarrisParams)
    gmm: GmmParams = field(default_factory=GmmParams)
    candidates: CandidateFilterParams = field(default_factory=CandidateFilterParams)
    hog: HogParams = field(default_factory=HogParams)
    pyramid: PyramidParams = field(default_factory=PyramidParams)


@dataclass
class ExternalDetector:
    """Detections produced outside this package; seconds is their processing time if known."""
    name: str
    detections: DetectionTable
    seconds: Optional[float] = None


def enhance_methods(settings: MethodSettings = MethodSettings()) -> List[FrameMethod]:
    """Every enhancement-suite method, in ENHANCE_SUITE order."""
    return [
        HistEqualizeMethod(),
        CannyMethod(settings.canny),
        ThresholdMethod(settings.threshold),
        GammaMethod(settings.gamma),
        ClaheMethod(settings.clahe),
        SegmentationMethod(settings.candidates),
        MotionMethod(settings.gmm, shadows=True),
        MotionMethod(settings.gmm, shadows=False),
        HarrisMethod(settings.harris),
    ]


def build_method(key: str, settings: MethodSettings = MethodSettings(),
                 model: Optional[LinearModel] = None) -> FrameMethod:
    """
    Method for a CLI key: gamma, he, clahe, threshold, canny, harris,
    motion, segment or hog.
    """
    factories = {
        "gamma": lambda: GammaMethod(settings.gamma),
        "he": HistEqualizeMethod,
        "clahe": lambda: ClaheMethod(settings.clahe),
        "threshold": lambda: ThresholdMethod(settings.threshold),
        "canny": lambda: CannyMethod(settings.canny),
        "harris": lambda: HarrisMethod(settings.harris),
        "motion": lambda: MotionMethod(settings.gmm),
        "segment": lambda: SegmentationMethod(settings.candidates),
    }
    if key == "hog":
        if model is None:
            raise ValueError("The hog method needs a model")
        return HogSvmMethod(model, settings.hog, settings.pyramid)
    if key not in factories:
        raise ValueError(f"Unknown method '{key}'")
    return factories[key]()


def detection_fields(table: DetectionTable, truth: GroundTruth, iou_min: float = 0.5) -> Dict:
    """first_detection_frame and seconds_before_crash for one detector."""
    first = eval_first_detection(table, truth, iou_min)
    seconds = None
    if first is not None and truth.crash_frame is not None:
        if first <= truth.crash_frame:
            seconds = seconds_before_crash(first, truth.crash_frame, truth.fps)
        else:
            logger.warning(f"First detection at frame {first} comes after the crash at {truth.crash_frame}")
    return {"first_detection_frame": first, "seconds_before_crash": seconds}


def external_record(external: ExternalDetector, truth: GroundTruth, frame_count: int,
                    iou_min: float = 0.5) -> BenchRecord:
    fields = detection_fields(external.detections, truth, iou_min)
    if external.seconds is None:
        return BenchRecord(external.name, **fields)
    return BenchRecord.timed(external.name, frame_count, external.seconds, **fields)


def run_suite(suite: str, frames: Sequence[Frame], settings: MethodSettings = MethodSettings(),
              model: Optional[LinearModel] = None, externals: Sequence[ExternalDetector] = (),
              truth: Optional[GroundTruth] = None, warmup_frames: int = 5, jobs: int = 1,
              iou_min: float = 0.5,
              frame_indices: Optional[Sequence[int]] = None) -> List[BenchRecord]:
    """
    Run a suite and return one record per method, in registry order.

    Detections are attributed to frame_indices[i] (the file-name index of
    the i-th frame) when given, else to the position i.

    Raises:
        ValueError: For an unknown suite, a detection suite without ground
            truth, or a detection suite with nothing to evaluate
    """
    if suite not in SUITES:
        raise ValueError(f"Unknown suite '{suite}', expected one of {SUITES}")
    detecting = suite in ("detect", "all")
    if detecting and truth is None:
        raise ValueError("The detect suite needs ground truth")
    if detecting and model is None and not externals:
        raise ValueError("The detect suite needs a model or at least one external detector")
    records: List[BenchRecord] = []

    if suite in ("enhance", "all"):
        for method in enhance_methods(settings):
            records.append(time_method(method, frames, warmup_frames, jobs=jobs))

    if detecting:
        if model is not None:
            method = HogSvmMethod(model, settings.hog, settings.pyramid)
            outputs: list = []
            record = time_method(method, frames, warmup_frames, outputs=outputs, jobs=jobs)
            indices = list(frame_indices) if frame_indices else list(range(len(frames)))
            detections = [det for i, dets in zip(indices, outputs) for det in tag_frame(dets, i)]
            track_detections(method.name, len(detections))
            records.append(replace(record, **detection_fields(group_by_frame(detections), truth, iou_min)))
        for external in externals:
            records.append(external_record(external, truth, len(frames), iou_min))

    return records
