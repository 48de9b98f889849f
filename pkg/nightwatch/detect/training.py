# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Detector training from a crop directory.

Layout:
    <dir>/pos/   window-sized pedestrian crops (64x128 by default)
    <dir>/neg/   background images; window-sized images are used as-is,
                 larger ones contribute seeded random windows

An optional hard-negative pass scores the negative images with the first
model, appends every window above threshold to the negatives and trains
once more.
"""

from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from ..frameio.frame import Frame, to_grayscale
from ..frameio.pnm import load_frame
from ..frameio.sequence import FRAME_SUFFIXES
from ..logging import get_logger
from .hog import hog_descriptor, resize_gray
from .models import HogParams, LinearModel, PyramidParams
from .sliding import detect_windows
from .svm import train_linear_svm

logger = get_logger(__name__, component="detect")


def _image_files(directory: Path) -> List[Path]:
    if not directory.is_dir():
        raise FileNotFoundError(f"Training directory not found: {directory}")
    files = sorted(p for p in directory.iterdir() if p.is_file() and p.suffix.lower() in FRAME_SUFFIXES)
    if not files:
        raise ValueError(f"No training images in {directory}")
    return files


def load_training_set(pos_dir: Union[str, Path], neg_dir: Union[str, Path],
                      hog: HogParams = HogParams(), seed: int = 0,
                      windows_per_negative: int = 10) -> Tuple[List[np.ndarray], List[np.ndarray]]:
    """
    Descriptors for the positive crops and sampled negative windows.

    Raises:
        FileNotFoundError: If a directory is missing
        ValueError: If a directory is empty, a positive crop is not window
            sized or a negative image is smaller than the window
    """
    rng = np.random.default_rng(seed)
    size = (hog.window_height, hog.window_width)

    positives = []
    for path in _image_files(Path(pos_dir)):
        pixels = to_grayscale(load_frame(path)).pixels
        if pixels.shape != size:
            raise ValueError(
                f"Positive crop {path} is {pixels.shape[1]}x{pixels.shape[0]}, "
                f"expected {hog.window_width}x{hog.window_height}"
            )
        positives.append(hog_descriptor(pixels, hog))

    negatives = []
    for path in _image_files(Path(neg_dir)):
        pixels = to_grayscale(load_frame(path)).pixels
        height, width = pixels.shape
        if height < size[0] or width < size[1]:
            raise ValueError(f"Negative image {path} is smaller than the detection window")
        if pixels.shape == size:
            negatives.append(hog_descriptor(pixels, hog))
            continue
        for _ in range(windows_per_negative):
            y = int(rng.integers(0, height - size[0] + 1))
            x = int(rng.integers(0, width - size[1] + 1))
            negatives.append(hog_descriptor(pixels[y:y + size[0], x:x + size[1]], hog))

    logger.info(
        "Training set loaded",
        extra={"extra_fields": {"positives": len(positives), "negatives": len(negatives)}}
    )
    return positives, negatives


def mine_hard_negatives(model: LinearModel, negative_frames: Sequence[Frame],
                        hog: HogParams = HogParams(), pyr: PyramidParams = PyramidParams(),
                        limit: Optional[int] = None) -> List[np.ndarray]:
    """
    Descriptors of every window the model accepts on person-free frames,
    strongest first, at most `limit` of them.
    """
    scored = []
    for frame in negative_frames:
        gray = to_grayscale(frame)
        for det in detect_windows(gray, model, hog, pyr):
            box = det.bbox
            crop = gray.pixels[box.y:box.y + box.h, box.x:box.x + box.w]
            window = resize_gray(crop, hog.window_width, hog.window_height)
            scored.append((det.score, hog_descriptor(window, hog)))
    scored.sort(key=lambda item: -item[0])
    if limit is not None:
        scored = scored[:limit]
    logger.info(f"Mined {len(scored)} hard negatives")
    return [descriptor for _, descriptor in scored]


def train_detector(positives: Sequence[np.ndarray], negatives: Sequence[np.ndarray],
                   negative_frames: Optional[Sequence[Frame]] = None,
                   lam: float = 0.01, epochs: int = 100, seed: int = 0,
                   score_threshold: float = 0.0, hog: HogParams = HogParams(),
                   pyr: PyramidParams = PyramidParams(),
                   hard_negative_limit: Optional[int] = None) -> LinearModel:
    """Train, then optionally mine hard negatives from negative_frames and retrain once."""
    model = train_linear_svm(positives, negatives, lam, epochs, seed, score_threshold)
    if not negative_frames:
        return model
    hard = mine_hard_negatives(model, negative_frames, hog, pyr, hard_negative_limit)
    if not hard:
        return model
    return train_linear_svm(positives, list(negatives) + hard, lam, epochs, seed, score_threshold)
