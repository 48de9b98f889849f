# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Adaptive Gaussian-Mixture Background Subtraction

Every pixel keeps up to K weighted Gaussians, sorted by weight/sqrt(variance).
The number of live components adapts: each update applies the complexity
prior c_T (w <- w + alpha*(o - w) - alpha*c_T) and components whose weight
drops below zero are discarded.

Mask values:
    0   background: matched a component inside the leading set whose
        cumulative weight first reaches background_fraction
    127 shadow (detect_shadows on): a darkened copy of a background mean,
        current/mean ratio inside shadow_luma_band
    255 foreground

The model is updated in place by gmm_update; frames must arrive in temporal
order. All per-pixel work is vectorized over the frame.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..frameio.frame import Frame, require_gray
from ..utils.validators import require_positive, require_range

COMPLEXITY_PRIOR = 0.05

MASK_BACKGROUND = 0
MASK_SHADOW = 127
MASK_FOREGROUND = 255


@dataclass(frozen=True)
class GmmParams:
    max_components: int = 5
    learning_rate: float = 0.005
    background_fraction: float = 0.9
    initial_variance: float = 225.0
    match_threshold: float = 2.5
    detect_shadows: bool = True
    shadow_luma_band: Tuple[float, float] = (0.5, 0.95)
    variance_floor: float = 4.0

    def __post_init__(self):
        if not isinstance(self.max_components, int) or not 1 <= self.max_components <= 8:
            raise ValueError(f"max_components must be in [1, 8], got {self.max_components!r}")
        require_range("learning_rate", self.learning_rate, 0.0, 1.0)
        require_range("background_fraction", self.background_fraction, 0.0, 1.0)
        require_positive("initial_variance", self.initial_variance)
        require_positive("match_threshold", self.match_threshold)
        require_positive("variance_floor", self.variance_floor)
        low, high = self.shadow_luma_band
        if not 0.0 < low < high <= 1.0:
            raise ValueError(f"shadow_luma_band must satisfy 0 < low < high <= 1, got {self.shadow_luma_band}")


@dataclass
class BackgroundModel:
    """
    Per-pixel mixture state. Arrays are float32 with shape (K, height, width),
    one plane per component slot, kept sorted by weight/sqrt(variance),
    strongest first; unused slots carry weight 0.
    """
    params: GmmParams
    weights: np.ndarray
    means: np.ndarray
    variances: np.ndarray
    frame_count: int = 0

    @property
    def width(self) -> int:
        return int(self.weights.shape[2])

    @property
    def height(self) -> int:
        return int(self.weights.shape[1])

    def active_components(self) -> np.ndarray:
        """Number of live components per pixel."""
        return (self.weights > 0).sum(axis=0)

    def background_image(self) -> Frame:
        """Mean of the dominant component at every pixel."""
        dominant = np.clip(np.floor(self.means[0] + 0.5), 0, 255)
        return Frame(dominant.astype(np.uint8))


def gmm_init(params: GmmParams, width: int, height: int) -> BackgroundModel:
    """
    Fresh model: one component per pixel with weight 1, mean 0 and the
    initial variance. The first update replaces the mean with the observed
    pixel value.
    """
    if width <= 0 or height <= 0:
        raise ValueError(f"Model dimensions must be positive, got {width}x{height}")
    k = params.max_components
    weights = np.zeros((k, height, width), dtype=np.float32)
    weights[0] = 1.0
    means = np.zeros((k, height, width), dtype=np.float32)
    variances = np.full((k, height, width), params.initial_variance, dtype=np.float32)
    return BackgroundModel(params=params, weights=weights, means=means, variances=variances)


def _fitness(weights: np.ndarray, variances: np.ndarray) -> np.ndarray:
    return weights / np.sqrt(variances)


def _resort_components(model: BackgroundModel) -> None:
    """Re-rank only the pixels whose slots are out of order."""
    if model.params.max_components == 1:
        return
    key = _fitness(model.weights, model.variances)
    disordered = (key[1:] > key[:-1]).any(axis=0)
    pixels = np.flatnonzero(disordered)
    if pixels.size == 0:
        return
    k = model.params.max_components
    flat_key = key.reshape(k, -1)[:, pixels]
    order = np.argsort(-flat_key, axis=0, kind="stable")
    for plane in (model.weights, model.means, model.variances):
        flat = plane.reshape(k, -1)
        flat[:, pixels] = np.take_along_axis(flat[:, pixels], order, axis=0)


def _replace_weakest(model: BackgroundModel, x: np.ndarray, unmatched: np.ndarray) -> None:
    """Unmatched pixels give their weakest slot to a new component centred on x."""
    pixels = np.flatnonzero(unmatched)
    if pixels.size == 0:
        return
    params = model.params
    k = params.max_components
    weights = model.weights.reshape(k, -1)
    key = _fitness(weights[:, pixels], model.variances.reshape(k, -1)[:, pixels])
    slots = np.argmin(key, axis=0)
    weights[slots, pixels] = params.learning_rate
    model.means.reshape(k, -1)[slots, pixels] = x.ravel()[pixels]
    model.variances.reshape(k, -1)[slots, pixels] = params.initial_variance


def _shadow_pixels(weights: np.ndarray, means: np.ndarray, x: np.ndarray,
                   candidates: np.ndarray, params: GmmParams) -> np.ndarray:
    """
    Candidates whose value is a darkened copy of a background mean.

    `weights` and `means` are the mixture as it stood before the frame.
    """
    shadow = np.zeros(x.size, dtype=bool)
    pixels = np.flatnonzero(candidates)
    if pixels.size == 0:
        return shadow.reshape(x.shape)
    k = params.max_components
    w = weights.reshape(k, -1)[:, pixels]
    m = means.reshape(k, -1)[:, pixels]
    value = x.ravel()[pixels]
    low, high = params.shadow_luma_band
    in_background = (w > 0) & ((np.cumsum(w, axis=0) - w) < params.background_fraction)
    usable = in_background & (m > 0)
    darker = usable & (value >= low * m) & (value <= high * m)
    shadow[pixels[darker.any(axis=0)]] = True
    return shadow.reshape(x.shape)


def gmm_update(model: BackgroundModel, gray: Frame) -> Frame:
    """
    Feed one frame to the model and return its mask (0 / 127 / 255).

    Raises:
        ValueError: If the frame is not 1-channel or its size differs from the model
    """
    pixels = require_gray(gray, "gmm_update")
    if pixels.shape != model.weights.shape[1:]:
        raise ValueError(
            f"Frame {pixels.shape[1]}x{pixels.shape[0]} does not match model {model.width}x{model.height}"
        )
    params = model.params
    x = pixels.astype(np.float32)

    if model.frame_count == 0:
        model.means[0] = x
        model.frame_count = 1
        return Frame(np.zeros(pixels.shape, dtype=np.uint8))

    if params.detect_shadows:
        before = (model.weights.copy(), model.means.copy())

    alpha = np.float32(params.learning_rate)
    decay = np.float32(1.0) - alpha
    prior = alpha * np.float32(COMPLEXITY_PRIOR)
    threshold2 = np.float32(params.match_threshold ** 2)

    matched = np.zeros(pixels.shape, dtype=bool)
    is_background = np.zeros(pixels.shape, dtype=bool)
    cumulative = np.zeros(pixels.shape, dtype=np.float32)

    for slot in range(params.max_components):
        w, m, v = model.weights[slot], model.means[slot], model.variances[slot]
        active = w > 0
        if not active.any():
            continue
        diff = x - m
        dist2 = diff * diff
        hit = active & ~matched & (dist2 < threshold2 * v)
        # background set is decided on the weights before this frame's update
        is_background |= hit & (cumulative < params.background_fraction)
        cumulative += w

        w *= decay
        w += alpha * hit
        w -= prior
        np.maximum(w, 0, out=w)

        # min(alpha / w, 1)
        rate = hit * (alpha / np.maximum(w, alpha))
        m += rate * diff
        dist2 -= v
        v += rate * dist2
        np.maximum(v, params.variance_floor, out=v)
        matched |= hit

    _replace_weakest(model, x, ~matched)
    model.weights /= model.weights.sum(axis=0)
    _resort_components(model)
    model.frame_count += 1

    mask = np.full(pixels.shape, MASK_FOREGROUND, dtype=np.uint8)
    mask[is_background] = MASK_BACKGROUND
    if params.detect_shadows:
        mask[_shadow_pixels(*before, x, ~is_background, params)] = MASK_SHADOW
    return Frame(mask)
