# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
NightWatch Detection Module

HOG descriptor, linear SVM training and scoring, multi-scale sliding-window
search, IoU and non-maximum suppression.
"""

from .boxes import iou, nms
from .export import detection_line, save_detections, tag_frame, write_detections
from .hog import cell_histograms, hog_descriptor, normalized_blocks
from .methods import HogSvmMethod
from .models import Detection, HogParams, LinearModel, PyramidParams
from .sliding import detect_pedestrians, detect_windows
from .svm import (
    MODEL_MAGIC,
    ModelFormatError,
    fit_linear_svm,
    load_model,
    save_model,
    svm_score,
    train_linear_svm,
)
from .training import load_training_set, mine_hard_negatives, train_detector

__all__ = [
    'Detection',
    'HogParams',
    'HogSvmMethod',
    'LinearModel',
    'MODEL_MAGIC',
    'ModelFormatError',
    'PyramidParams',
    'cell_histograms',
    'detect_pedestrians',
    'detect_windows',
    'detection_line',
    'fit_linear_svm',
    'hog_descriptor',
    'iou',
    'load_model',
    'load_training_set',
    'mine_hard_negatives',
    'nms',
    'normalized_blocks',
    'save_detections',
    'save_model',
    'svm_score',
    'tag_frame',
    'train_detector',
    'train_linear_svm',
    'write_detections',
]
