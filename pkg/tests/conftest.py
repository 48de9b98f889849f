# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Pytest Configuration and Shared Fixtures

Provides common fixtures for NightWatch tests.
"""

import pytest
import tempfile
import shutil
from pathlib import Path

import numpy as np

from nightwatch.bench.synthetic import SceneParams, render_scene, training_windows
from nightwatch.detect.hog import hog_descriptor
from nightwatch.detect.svm import train_linear_svm
from nightwatch.frameio.frame import Frame


@pytest.fixture
def temp_dir():
    """Provide a temporary directory that gets cleaned up after test"""
    temp_path = tempfile.mkdtemp()
    yield Path(temp_path)
    shutil.rmtree(temp_path)


@pytest.fixture
def rng():
    """Seeded generator so random inputs are reproducible"""
    return np.random.default_rng(1234)


@pytest.fixture
def gray_frame(rng):
    """64x48 gray frame of random samples"""
    return Frame(rng.integers(0, 256, size=(48, 64), dtype=np.uint8))


@pytest.fixture
def rgb_frame(rng):
    """32x24 RGB frame of random samples"""
    return Frame(rng.integers(0, 256, size=(24, 32, 3), dtype=np.uint8))


@pytest.fixture
def dark_frames(rng):
    """Short dark sequence of 8 gray frames"""
    return [Frame(rng.integers(5, 40, size=(96, 128), dtype=np.uint8)) for _ in range(8)]


@pytest.fixture(scope="session")
def small_scene():
    """
    Synthetic 192x256 scene: the pedestrian appears at frame 40 and the
    crash mark is frame 42.
    """
    params = SceneParams(width=192, height=256, frames=44, start=40, crash_offset=2, seed=3)
    frames, truth = render_scene(params)
    return params, frames, truth


@pytest.fixture(scope="session")
def night_scene():
    """
    Full-length synthetic 192x256 scene: 120 frames, the pedestrian appears
    at frame 40 and the crash mark is frame 95.
    """
    params = SceneParams(width=192, height=256, seed=3)
    frames, truth = render_scene(params)
    return params, frames, truth


@pytest.fixture(scope="session")
def toy_model():
    """Linear SVM trained on synthetic figure / background windows"""
    pos, neg = training_windows(positives=24, negatives=72, seed=0, scene_size=(192, 256))
    return train_linear_svm(
        [hog_descriptor(p) for p in pos],
        [hog_descriptor(n) for n in neg],
        lam=0.01, epochs=30, seed=0
    )
