# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Tests for Detection

Tests the HOG descriptor, linear SVM, sliding-window search, NMS and export.
"""

import io
import json

import pytest
import numpy as np

from nightwatch.bench.synthetic import write_training_set
from nightwatch.detect import (
    MODEL_MAGIC,
    Detection,
    HogParams,
    HogSvmMethod,
    LinearModel,
    ModelFormatError,
    PyramidParams,
    cell_histograms,
    detect_pedestrians,
    detect_windows,
    fit_linear_svm,
    hog_descriptor,
    iou,
    load_model,
    load_training_set,
    mine_hard_negatives,
    nms,
    save_model,
    svm_score,
    tag_frame,
    train_linear_svm,
    write_detections,
)
from nightwatch.detect.sliding import level_scores
from nightwatch.detect.svm import svm_objective
from nightwatch.frameio import BoundingBox, Frame

DESCRIPTOR_LENGTH = 3780


def _always_model(bias=1.0):
    """Model that accepts every window with score `bias`."""
    return LinearModel(np.zeros(DESCRIPTOR_LENGTH), bias=bias)


def _det(x, y, w, h, score, frame=0):
    return Detection(BoundingBox(x, y, w, h), score, "person", frame)


# HOG

def test_default_descriptor_length():
    """Test the canonical 64x128 descriptor size"""
    assert HogParams().descriptor_length == DESCRIPTOR_LENGTH


def test_hog_params_validation():
    """Test that windows must split into whole cells"""
    with pytest.raises(ValueError, match="divisible"):
        HogParams(window_width=60)
    with pytest.raises(ValueError):
        HogParams(bins=0)


def test_hog_descriptor_flat_window_is_zero():
    """Test that a window without gradients has a zero descriptor"""
    descriptor = hog_descriptor(np.full((128, 64), 90, dtype=np.uint8))
    assert descriptor.shape == (DESCRIPTOR_LENGTH,)
    assert not descriptor.any()


def test_hog_descriptor_rejects_wrong_size():
    """Test window size validation"""
    with pytest.raises(ValueError, match="64x128"):
        hog_descriptor(np.zeros((64, 64), dtype=np.uint8))


def test_hog_blocks_are_normalized(rng):
    """Test that every block vector has at most unit length"""
    window = rng.integers(0, 256, size=(128, 64)).astype(np.uint8)
    blocks = hog_descriptor(window).reshape(-1, 36)
    norms = np.linalg.norm(blocks, axis=1)
    assert np.all(norms <= 1.0 + 1e-9)
    assert np.all(norms > 0.99)


def test_cell_histogram_vertical_gradient_votes_one_bin():
    """Test that a vertical ramp votes only in the 90 degree bin"""
    ramp = np.repeat(np.arange(16, dtype=np.float64)[:, None] * 4, 16, axis=1)
    hist = cell_histograms(ramp)
    assert hist.shape == (2, 2, 9)
    assert np.all(hist[:, :, 4] > 0)
    assert not np.delete(hist, 4, axis=2).any()


def test_cell_histogram_horizontal_gradient_splits_between_end_bins():
    """Test that a 0 degree gradient is shared by the first and last bins"""
    ramp = np.repeat(np.arange(16, dtype=np.float64)[None, :] * 4, 16, axis=0)
    hist = cell_histograms(ramp)
    assert np.allclose(hist[:, :, 0], hist[:, :, 8])
    assert np.all(hist[:, :, 0] > 0)
    assert not hist[:, :, 1:8].any()


def test_hog_ignores_brightness_offset_and_follows_cell_shifts(rng):
    """Test that a constant offset leaves the descriptor alone and a one-cell crop shifts the cells"""
    window = rng.integers(0, 200, size=(128, 64)).astype(np.uint8)
    brighter = (window + 55).astype(np.uint8)
    assert np.abs(hog_descriptor(brighter) - hog_descriptor(window)).max() <= 1e-12

    image = rng.integers(0, 256, size=(64, 80)).astype(np.uint8)
    whole = cell_histograms(image)
    cropped = cell_histograms(image[8:, 8:])
    assert np.abs(cropped[1:, 1:] - whole[2:, 2:]).max() <= 1e-12


def test_dense_scores_match_descriptor(rng):
    """Test that dense block scoring equals scoring the window descriptor"""
    window = rng.integers(0, 256, size=(128, 64)).astype(np.uint8)
    model = LinearModel(rng.normal(size=DESCRIPTOR_LENGTH), bias=0.25)
    [(x, y, score)] = level_scores(window.astype(np.float64), model, HogParams(), 8)
    assert (x, y) == (0, 0)
    assert score == pytest.approx(svm_score(model, hog_descriptor(window)), rel=1e-9, abs=1e-9)


# SVM

def test_linear_svm_separates_points():
    """Test training on two separable point clouds"""
    positives = [np.array(p, dtype=float) for p in ([3, 3], [4, 2], [2, 4], [3, 5])]
    negatives = [np.array(p, dtype=float) for p in ([-3, -3], [-4, -2], [-2, -4], [-3, -5])]
    model, history = fit_linear_svm(positives, negatives, lam=0.1, epochs=200, seed=0)
    assert all(svm_score(model, p) > 0 for p in positives)
    assert all(svm_score(model, n) < 0 for n in negatives)
    assert len(history) == 200

    features = np.vstack(positives + negatives)
    labels = np.array([1.0] * len(positives) + [-1.0] * len(negatives))
    kept = svm_objective(model.weights, model.bias, features, labels, 0.1)
    assert kept == min(history)
    assert kept < svm_objective(np.zeros(2), 0.0, features, labels, 0.1)


def test_linear_svm_is_deterministic():
    """Test that a fixed seed gives identical models"""
    positives = [np.array([1.0, 2.0]), np.array([2.0, 1.0])]
    negatives = [np.array([-1.0, -2.0]), np.array([-2.0, 0.5])]
    first = train_linear_svm(positives, negatives, seed=7, epochs=20)
    second = train_linear_svm(positives, negatives, seed=7, epochs=20)
    assert first == second


def test_linear_svm_rejects_bad_input():
    """Test empty classes and mixed descriptor lengths"""
    with pytest.raises(ValueError):
        train_linear_svm([], [np.zeros(3)])
    with pytest.raises(ValueError, match="mismatch"):
        train_linear_svm([np.zeros(3)], [np.zeros(4)])


def test_toy_model_scores_training_windows(toy_model):
    """Test that the synthetic detector separates fresh synthetic windows"""
    from nightwatch.bench.synthetic import training_windows
    pos, neg = training_windows(positives=6, negatives=6, seed=99, scene_size=(192, 256))
    assert all(svm_score(toy_model, hog_descriptor(p)) > 0 for p in pos)
    assert all(svm_score(toy_model, hog_descriptor(n)) < 0 for n in neg)


def test_model_file_round_trip(temp_dir, rng):
    """Test that a saved model loads back identically"""
    model = LinearModel(rng.normal(size=12), bias=-0.5, score_threshold=0.3)
    path = save_model(model, temp_dir / "model.nwsvm")
    assert path.read_bytes().startswith(MODEL_MAGIC)
    assert load_model(path) == model


def test_model_file_errors(temp_dir):
    """Test bad magic, truncated files and missing files"""
    bad = temp_dir / "bad.nwsvm"
    bad.write_bytes(b"NOTSVM" + bytes(20))
    with pytest.raises(ModelFormatError):
        load_model(bad)

    path = save_model(LinearModel(np.ones(4)), temp_dir / "short.nwsvm")
    path.write_bytes(path.read_bytes()[:-3])
    with pytest.raises(ModelFormatError, match="size"):
        load_model(path)

    with pytest.raises(FileNotFoundError):
        load_model(temp_dir / "absent.nwsvm")


def test_model_with_threshold():
    """Test that changing the threshold keeps the weights"""
    model = _always_model()
    raised = model.with_threshold(2.0)
    assert raised.score_threshold == 2.0
    assert np.array_equal(raised.weights, model.weights)


# Boxes

def test_iou_values():
    """Test IoU for overlapping, identical and disjoint boxes"""
    a = BoundingBox(0, 0, 10, 10)
    assert iou(a, BoundingBox(5, 0, 10, 10)) == pytest.approx(1 / 3)
    assert iou(a, a) == 1.0
    assert iou(a, BoundingBox(10, 0, 5, 5)) == 0.0


def test_iou_symmetric_and_translation_invariant(rng):
    """Test that IoU ignores argument order and a common shift"""
    for _ in range(100):
        x1, y1, x2, y2, dx, dy = (int(v) for v in rng.integers(0, 40, size=6))
        w1, h1, w2, h2 = (int(v) for v in rng.integers(1, 30, size=4))
        a, b = BoundingBox(x1, y1, w1, h1), BoundingBox(x2, y2, w2, h2)
        moved_a = BoundingBox(x1 + dx, y1 + dy, w1, h1)
        moved_b = BoundingBox(x2 + dx, y2 + dy, w2, h2)
        assert iou(a, b) == iou(b, a)
        assert iou(moved_a, moved_b) == iou(a, b)
        assert 0.0 <= iou(a, b) <= 1.0


def test_nms_keeps_best_and_disjoint():
    """Test suppression of overlapping weaker boxes"""
    strong = _det(0, 0, 10, 10, 0.9)
    weak = _det(1, 1, 10, 10, 0.5)
    far = _det(50, 50, 10, 10, 0.1)
    assert nms([weak, far, strong], 0.3) == [strong, far]


def test_nms_tie_breaks_by_position():
    """Test that equal scores rank top-to-bottom, then left-to-right"""
    upper = _det(2, 0, 10, 10, 1.0)
    lower = _det(0, 1, 10, 10, 1.0)
    assert nms([lower, upper], 0.3) == [upper]


def test_nms_chain_keeps_both_ends():
    """Test that a suppressed middle box no longer suppresses its other neighbor"""
    a = _det(0, 0, 10, 10, 0.9)
    b = _det(4, 0, 10, 10, 0.8)
    c = _det(8, 0, 10, 10, 0.7)
    assert iou(a.bbox, b.bbox) >= 0.3 and iou(b.bbox, c.bbox) >= 0.3 and iou(a.bbox, c.bbox) < 0.3
    assert nms([c, b, a], 0.3) == [a, c]


def test_nms_ignores_input_order(rng):
    """Test that shuffling the candidates never changes the kept set"""
    scores = rng.permutation(15) / 15.0
    detections = [
        _det(int(x), int(y), 20, 40, float(s))
        for x, y, s in zip(rng.integers(0, 60, size=15), rng.integers(0, 60, size=15), scores)
    ]
    expected = nms(detections, 0.3)
    for _ in range(10):
        shuffled = [detections[i] for i in rng.permutation(len(detections))]
        assert nms(shuffled, 0.3) == expected


def test_nms_empty():
    """Test that no detections stay no detections"""
    assert nms([], 0.3) == []


# Sliding window

def test_detect_frame_smaller_than_window():
    """Test that tiny frames yield nothing"""
    frame = Frame(np.zeros((32, 32), dtype=np.uint8))
    assert detect_pedestrians(frame, _always_model()) == []


def test_detect_rejects_model_length():
    """Test model / descriptor length validation"""
    frame = Frame(np.zeros((128, 64), dtype=np.uint8))
    with pytest.raises(ValueError, match="does not match"):
        detect_pedestrians(frame, LinearModel(np.ones(10)))


def test_detect_windows_positions_and_suppression():
    """Test window enumeration and the deterministic survivor of NMS"""
    frame = Frame(np.zeros((128, 80), dtype=np.uint8))
    windows = detect_windows(frame, _always_model())
    assert sorted(d.bbox.x for d in windows) == [0, 8, 16]
    assert all(d.bbox.y == 0 and d.bbox.w == 64 and d.bbox.h == 128 for d in windows)
    [kept] = detect_pedestrians(frame, _always_model())
    assert kept.bbox == BoundingBox(0, 0, 64, 128)


def test_detect_respects_threshold():
    """Test that windows at or below the threshold are not reported"""
    frame = Frame(np.zeros((128, 64), dtype=np.uint8))
    assert detect_pedestrians(frame, _always_model(1.0).with_threshold(1.0)) == []


def test_pyramid_maps_boxes_to_frame():
    """Test that coarser levels report boxes in base-frame coordinates"""
    frame = Frame(np.zeros((160, 100), dtype=np.uint8))
    windows = detect_windows(frame, _always_model(), pyr=PyramidParams(scale_step=1.25))
    assert any(d.bbox.h == 160 for d in windows)
    assert all(d.bbox.fits(100, 160) for d in windows)


def test_toy_model_finds_synthetic_pedestrian(small_scene, toy_model):
    """Test that the figure is found where it first appears"""
    params, frames, truth = small_scene
    [(target, _)] = truth.boxes_at(params.start)
    detections = detect_pedestrians(frames[params.start], toy_model)
    assert any(iou(d.bbox, target) >= 0.5 for d in detections)


def test_hog_method_tags_frames():
    """Test that the detector numbers frames from the context offset"""
    method = HogSvmMethod(_always_model())
    method.initialize({"frame_offset": 10})
    frame = Frame(np.zeros((128, 64), dtype=np.uint8))
    first = method.process(frame)
    second = method.process(frame)
    assert [d.frame_index for d in first] == [10]
    assert [d.frame_index for d in second] == [11]


def test_hog_method_checks_model_length():
    """Test that initialize() refuses a model of the wrong length"""
    method = HogSvmMethod(LinearModel(np.ones(5)))
    with pytest.raises(ValueError, match="does not match"):
        method.initialize({})


# Training

def test_load_training_set(temp_dir):
    """Test loading positive and negative crops from directories"""
    pos_dir, neg_dir = write_training_set(temp_dir, positives=4, negatives=3)
    positives, negatives = load_training_set(pos_dir, neg_dir)
    assert len(positives) == 4
    assert len(negatives) == 3
    assert all(d.shape == (DESCRIPTOR_LENGTH,) for d in positives + negatives)


def test_load_training_set_rejects_wrong_positive_size(temp_dir):
    """Test that positives must be exactly window sized"""
    from nightwatch.frameio import save_frame
    pos_dir, neg_dir = write_training_set(temp_dir, positives=1, negatives=1)
    save_frame(Frame(np.zeros((100, 50), dtype=np.uint8)), pos_dir / "pos_9999.pgm")
    with pytest.raises(ValueError, match="expected 64x128"):
        load_training_set(pos_dir, neg_dir)


def test_load_training_set_missing_directory(temp_dir):
    """Test that a missing directory raises FileNotFoundError"""
    with pytest.raises(FileNotFoundError):
        load_training_set(temp_dir / "pos", temp_dir / "neg")


def test_mine_hard_negatives_strongest_first():
    """Test that mining returns at most `limit` descriptors"""
    frame = Frame(np.zeros((128, 80), dtype=np.uint8))
    mined = mine_hard_negatives(_always_model(), [frame], limit=2)
    assert len(mined) == 2
    assert all(d.shape == (DESCRIPTOR_LENGTH,) for d in mined)


# Export

def test_write_detections_json_lines():
    """Test the detection JSON-lines record"""
    stream = io.StringIO()
    count = write_detections(stream, [_det(1, 2, 3, 4, 0.5, frame=7)])
    assert count == 1
    record = json.loads(stream.getvalue())
    assert record == {"frame": 7, "x": 1, "y": 2, "w": 3, "h": 4, "score": 0.5, "label": "person"}
    assert list(record) == ["frame", "x", "y", "w", "h", "score", "label"]


def test_tag_frame_rewrites_index():
    """Test re-attributing detections to another frame"""
    [tagged] = tag_frame([_det(0, 0, 5, 5, 1.0, frame=0)], 42)
    assert tagged.frame_index == 42
    assert tagged.bbox == BoundingBox(0, 0, 5, 5)
