# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Synthetic Night Scenes

A dark road scene with sensor noise into which a bright pedestrian figure
walks from a chosen start frame, growing and drifting toward the camera.
Ground truth is the figure's detection-window box per frame, together with
crash / visibility marks. The same figure, composited over background
windows, provides a matching training set, so a detector trained on it can
be checked end to end without real footage.

Everything is driven by a seeded numpy Generator; equal parameters give
equal pixels.
"""

import math
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple, Union

import numpy as np

from ..frameio.frame import BoundingBox, Frame
from ..frameio.pnm import save_frame
from ..frameio.sequence import save_sequence
from ..logging import get_logger
from .ground_truth import save_ground_truth
from .models import GroundTruth

logger = get_logger(__name__, component="bench")

FIGURE_WIDTH = 64
FIGURE_HEIGHT = 128


@dataclass(frozen=True)
class SceneParams:
    width: int = 640
    height: int = 480
    frames: int = 120
    start: int = 40
    fps: float = 24.0
    seed: int = 1
    crash_offset: int = 25
    growth: float = 0.01
    drift: int = 2
    noise_sigma: float = 2.0
    figure_level: int = 200

    def __post_init__(self):
        if self.width < FIGURE_WIDTH or self.height < FIGURE_HEIGHT:
            raise ValueError(
                f"Scene must be at least {FIGURE_WIDTH}x{FIGURE_HEIGHT}, got {self.width}x{self.height}"
            )
        if self.frames <= 0:
            raise ValueError(f"frames must be > 0, got {self.frames}")
        if not 0 <= self.start < self.frames:
            raise ValueError(f"start must be in [0, {self.frames}), got {self.start}")
        if self.noise_sigma < 0 or self.growth < 0:
            raise ValueError("noise_sigma and growth must be >= 0")
        if not 0 <= self.figure_level <= 255:
            raise ValueError(f"figure_level must be in [0, 255], got {self.figure_level}")

    @property
    def crash_frame(self) -> int:
        return max(self.start, self.frames - self.crash_offset)


def pedestrian_mask(width: int = FIGURE_WIDTH, height: int = FIGURE_HEIGHT) -> np.ndarray:
    """Figure pixels (head, torso, arms, legs) drawn on a width x height grid."""
    rows, cols = np.mgrid[0:height, 0:width]
    u = (cols + 0.5) * FIGURE_WIDTH / width
    v = (rows + 0.5) * FIGURE_HEIGHT / height
    head = (u - 32) ** 2 + (v - 22) ** 2 <= 49
    torso = (u >= 23) & (u <= 41) & (v >= 30) & (v <= 74)
    arms = (((u >= 18) & (u < 23)) | ((u > 41) & (u <= 46))) & (v >= 32) & (v <= 66)
    legs = (((u >= 24) & (u <= 30)) | ((u >= 34) & (u <= 40))) & (v >= 74) & (v <= 116)
    return head | torso | arms | legs


def night_background(width: int, height: int) -> np.ndarray:
    """Dark scene, slightly brighter toward the bottom rows (float64)."""
    ramp = 14.0 + 12.0 * np.arange(height) / max(height - 1, 1)
    return np.repeat(ramp[:, None], width, axis=1)


def _finish(image: np.ndarray, rng: np.random.Generator, sigma: float) -> np.ndarray:
    if sigma > 0:
        image = image + rng.normal(0.0, sigma, image.shape)
    return np.clip(np.floor(image + 0.5), 0, 255).astype(np.uint8)


def composite(image: np.ndarray, box: BoundingBox, level: int) -> np.ndarray:
    """Paint the figure scaled to `box` into a float image copy."""
    out = image.copy()
    region = out[box.y:box.y + box.h, box.x:box.x + box.w]
    region[pedestrian_mask(box.w, box.h)] = level
    return out


def figure_box(frame: int, params: SceneParams) -> Optional[BoundingBox]:
    """Window box of the figure at `frame`, or None before it appears."""
    if frame < params.start:
        return None
    steps = frame - params.start
    max_scale = min(params.width / FIGURE_WIDTH, params.height / FIGURE_HEIGHT)
    scale = min(1.0 + params.growth * steps, max_scale)
    w = min(int(round(FIGURE_WIDTH * scale)), params.width)
    h = min(int(round(FIGURE_HEIGHT * scale)), params.height)

    x0 = (int(params.width * 0.2) // 8) * 8
    y0 = max(0, (int(params.height * 0.85 - FIGURE_HEIGHT) // 8) * 8)
    x = min(x0 + params.drift * steps, params.width - w)
    y = min(max(0, y0 + FIGURE_HEIGHT - h), params.height - h)
    return BoundingBox(x, y, w, h)


def render_scene(params: SceneParams = SceneParams()) -> Tuple[List[Frame], GroundTruth]:
    """Frames plus ground truth for the scene."""
    rng = np.random.default_rng(params.seed)
    background = night_background(params.width, params.height)
    truth = GroundTruth(
        crash_frame=params.crash_frame,
        first_visible_frame=params.start,
        full_silhouette_frame=params.start,
        fps=params.fps,
    )
    frames = []
    for t in range(params.frames):
        box = figure_box(t, params)
        image = background if box is None else composite(background, box, params.figure_level)
        frames.append(Frame(_finish(image, rng, params.noise_sigma)))
        if box is not None:
            truth.add(t, box, "person")
    return frames, truth


def training_windows(positives: int = 24, negatives: int = 72, seed: int = 0,
                     noise_sigma: float = 2.0, figure_level: int = 200,
                     scene_size: Tuple[int, int] = (640, 480)) -> Tuple[List[np.ndarray], List[np.ndarray]]:
    """
    Window-sized uint8 crops: the figure over background (positives) and
    background alone (negatives), both cut at seeded random positions.
    """
    rng = np.random.default_rng(seed)
    width, height = scene_size
    background = night_background(width, height)
    mask = pedestrian_mask()

    def window() -> np.ndarray:
        y = int(rng.integers(0, height - FIGURE_HEIGHT + 1))
        x = int(rng.integers(0, width - FIGURE_WIDTH + 1))
        return background[y:y + FIGURE_HEIGHT, x:x + FIGURE_WIDTH].copy()

    pos = []
    for _ in range(positives):
        crop = window()
        crop[mask] = figure_level
        pos.append(_finish(crop, rng, noise_sigma))
    neg = [_finish(window(), rng, noise_sigma) for _ in range(negatives)]
    return pos, neg


def write_scene(params: SceneParams, directory: Union[str, Path]) -> Tuple[List[Path], Path]:
    """Write frame_NNNN files and gt.csv into `directory`."""
    directory = Path(directory)
    frames, truth = render_scene(params)
    paths = save_sequence(frames, directory)
    gt_path = save_ground_truth(truth, directory / "gt.csv")
    logger.info(
        f"Synthetic scene written to {directory}",
        extra={"extra_fields": {
            "frames": len(frames), "start": params.start, "crash_frame": params.crash_frame
        }}
    )
    return paths, gt_path


def write_training_set(directory: Union[str, Path], positives: int = 24, negatives: int = 72,
                       seed: int = 0, noise_sigma: float = 2.0) -> Tuple[Path, Path]:
    """Write pos/ and neg/ PGM crops for `nightwatch train`."""
    directory = Path(directory)
    pos, neg = training_windows(positives, negatives, seed, noise_sigma)
    digits = max(4, int(math.log10(max(positives, negatives, 1))) + 1)
    for sub, crops in (("pos", pos), ("neg", neg)):
        (directory / sub).mkdir(parents=True, exist_ok=True)
        for i, crop in enumerate(crops):
            save_frame(Frame(crop), directory / sub / f"{sub}_{i:0{digits}d}.pgm")
    return directory / "pos", directory / "neg"
