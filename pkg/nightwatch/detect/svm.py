# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Linear SVM

Training minimizes  lambda/2 * ||w||^2 + mean(max(0, 1 - y (w.x + b)))
with primal sub-gradient steps of size 1/(lambda * t) over a seeded
per-epoch shuffle. The bias is not regularized. The objective is evaluated
on the full set after each epoch and the best iterate so far is kept, so
the reported objective never increases.

Model files use a flat little-endian layout:
    b"NWSVM1" | u32 length | length x f64 weights | f64 bias | f64 score_threshold
"""

from pathlib import Path
from typing import List, Sequence, Tuple, Union

import numpy as np

from ..logging import get_logger
from ..utils.validators import require_int, require_positive
from .models import LinearModel

logger = get_logger(__name__, component="detect")

MODEL_MAGIC = b"NWSVM1"


class ModelFormatError(ValueError):
    """Raised when a model file is not a valid NWSVM1 file."""


def _stack(name: str, descriptors: Sequence[np.ndarray]) -> np.ndarray:
    if len(descriptors) == 0:
        raise ValueError(f"{name} must not be empty")
    lengths = {np.asarray(d).size for d in descriptors}
    if len(lengths) != 1:
        raise ValueError(f"{name} descriptors have mixed lengths {sorted(lengths)}")
    return np.asarray([np.asarray(d, dtype=np.float64).ravel() for d in descriptors])


def svm_objective(weights: np.ndarray, bias: float, features: np.ndarray,
                  labels: np.ndarray, lam: float) -> float:
    margins = labels * (features @ weights + bias)
    hinge = np.maximum(0.0, 1.0 - margins).mean()
    return float(0.5 * lam * weights @ weights + hinge)


def fit_linear_svm(positives: Sequence[np.ndarray], negatives: Sequence[np.ndarray],
                   lam: float = 0.01, epochs: int = 100, seed: int = 0,
                   score_threshold: float = 0.0) -> Tuple[LinearModel, List[float]]:
    """
    Train and return (model, objective of the iterate after each epoch).

    The model is the iterate with the lowest objective, which need not be
    the last one.

    Raises:
        ValueError: If a class is empty or descriptor lengths differ
    """
    require_positive("lambda", lam)
    require_int("epochs", epochs)
    pos = _stack("positives", positives)
    neg = _stack("negatives", negatives)
    if pos.shape[1] != neg.shape[1]:
        raise ValueError(f"Descriptor length mismatch: positives {pos.shape[1]}, negatives {neg.shape[1]}")

    features = np.vstack([pos, neg])
    labels = np.concatenate([np.ones(len(pos)), -np.ones(len(neg))])
    rng = np.random.default_rng(seed)

    weights = np.zeros(features.shape[1], dtype=np.float64)
    bias = 0.0
    best = (svm_objective(weights, bias, features, labels, lam), weights.copy(), bias)
    history: List[float] = []
    step = 0

    for _ in range(epochs):
        for i in rng.permutation(len(labels)):
            step += 1
            eta = 1.0 / (lam * step)
            x, y = features[i], labels[i]
            violated = y * (x @ weights + bias) < 1.0
            weights *= 1.0 - eta * lam
            if violated:
                weights += eta * y * x
                bias += eta * y
        objective = svm_objective(weights, bias, features, labels, lam)
        if objective < best[0]:
            best = (objective, weights.copy(), bias)
        history.append(objective)

    logger.info(
        "Linear SVM trained",
        extra={"extra_fields": {
            "positives": len(pos), "negatives": len(neg),
            "epochs": epochs, "objective": best[0]
        }}
    )
    return LinearModel(best[1], best[2], score_threshold), history


def train_linear_svm(positives: Sequence[np.ndarray], negatives: Sequence[np.ndarray],
                     lam: float = 0.01, epochs: int = 100, seed: int = 0,
                     score_threshold: float = 0.0) -> LinearModel:
    """Deterministic for a fixed seed."""
    model, _ = fit_linear_svm(positives, negatives, lam, epochs, seed, score_threshold)
    return model


def svm_score(model: LinearModel, descriptor: np.ndarray) -> float:
    """w.x + b. Raises ValueError on length mismatch."""
    x = np.asarray(descriptor, dtype=np.float64).ravel()
    if x.size != model.length:
        raise ValueError(f"Descriptor length {x.size} does not match model length {model.length}")
    return float(model.weights @ x + model.bias)


def encode_model(model: LinearModel) -> bytes:
    return b"".join([
        MODEL_MAGIC,
        np.array([model.length], dtype="<u4").tobytes(),
        model.weights.astype("<f8").tobytes(),
        np.array([model.bias, model.score_threshold], dtype="<f8").tobytes(),
    ])


def decode_model(data: bytes) -> LinearModel:
    """Raises ModelFormatError for a bad magic, length or size."""
    header = len(MODEL_MAGIC) + 4
    if len(data) < header or not data.startswith(MODEL_MAGIC):
        raise ModelFormatError("Not an NWSVM1 model file")
    length = int(np.frombuffer(data, dtype="<u4", count=1, offset=len(MODEL_MAGIC))[0])
    if length == 0:
        raise ModelFormatError("Model declares zero weights")
    expected = header + 8 * (length + 2)
    if len(data) != expected:
        raise ModelFormatError(f"Model file size {len(data)} does not match declared length {length}")
    values = np.frombuffer(data, dtype="<f8", offset=header).astype(np.float64)
    try:
        return LinearModel(values[:length], values[length], values[length + 1])
    except ValueError as e:
        raise ModelFormatError(f"Invalid model values: {e}") from e


def save_model(model: LinearModel, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(encode_model(model))
    logger.info(f"Model saved to {path}", extra={"extra_fields": {"length": model.length}})
    return path


def load_model(path: Union[str, Path]) -> LinearModel:
    """
    Raises:
        FileNotFoundError: If the file does not exist
        ModelFormatError: If the content is not a valid model
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"Model file not found: {path}")
    return decode_model(path.read_bytes())
