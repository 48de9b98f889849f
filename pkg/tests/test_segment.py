# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Tests for Segmentation

Tests adaptive binarization, block-based labeling and the candidate filter.
"""

import pytest
import numpy as np
from scipy import ndimage

from nightwatch.frameio import BoundingBox, Frame
from nightwatch.segment import (
    CandidateFilterParams,
    Component,
    SegmentationMethod,
    adaptive_binarize,
    filter_candidates,
    integral_image,
    label_components,
    pedestrian_candidates,
)
from nightwatch.segment.adaptive import window_sums
from nightwatch.segment.candidates import in_margin


def _binary(mask):
    return Frame(np.where(mask, 255, 0).astype(np.uint8))


def _same_partition(labels, reference):
    """True when both label maps split the foreground identically."""
    fg = labels > 0
    if not np.array_equal(fg, reference > 0):
        return False
    pairs = set(zip(labels[fg].tolist(), reference[fg].tolist()))
    return len(pairs) == len({a for a, _ in pairs}) == len({b for _, b in pairs})


def _check_against_reference(seed, shape=(23, 31), density=0.45):
    rng = np.random.default_rng(seed)
    mask = rng.random(shape) < density
    labels, components = label_components(_binary(mask))
    reference, count = ndimage.label(mask, structure=np.ones((3, 3), dtype=bool))
    assert _same_partition(labels, reference), f"seed {seed}"
    assert len(components) == count
    assert sorted(c.area for c in components) == sorted(np.bincount(reference.ravel())[1:].tolist())


# Adaptive binarization

def test_integral_image_sums():
    """Test summed-area table against a direct sum"""
    pixels = np.arange(12, dtype=np.uint8).reshape(3, 4)
    table = integral_image(pixels)
    assert table.shape == (4, 5)
    assert table[0].sum() == 0 and table[:, 0].sum() == 0
    assert table[3, 4] == pixels.sum()
    assert table[2, 3] == pixels[:2, :3].sum()


def test_window_sums_clamp_borders():
    """Test that window sums replicate border samples"""
    pixels = np.full((5, 5), 7, dtype=np.uint8)
    assert np.all(window_sums(pixels, 3) == 63)


def test_adaptive_binarize_flat_frame_is_empty():
    """Test that a flat frame has no foreground"""
    frame = Frame(np.full((20, 20), 200, dtype=np.uint8))
    assert not adaptive_binarize(frame).pixels.any()


def test_adaptive_binarize_bright_blob():
    """Test that a blob brighter than its surroundings is foreground"""
    pixels = np.full((40, 40), 20, dtype=np.uint8)
    pixels[15:25, 15:25] = 200
    out = adaptive_binarize(Frame(pixels), window=15, offset=10).pixels
    assert np.all(out[15:25, 15:25] == 255)
    assert out.sum() == 255 * 100


def test_adaptive_binarize_rejects_even_window():
    """Test window validation"""
    frame = Frame(np.zeros((8, 8), dtype=np.uint8))
    with pytest.raises(ValueError, match="odd"):
        adaptive_binarize(frame, window=4)
    with pytest.raises(ValueError):
        adaptive_binarize(frame, window=1)


# Labeling

def test_label_empty_frame():
    """Test that an all-background frame has no components"""
    labels, components = label_components(_binary(np.zeros((6, 9), dtype=bool)))
    assert components == []
    assert not labels.any()


def test_label_diagonal_pixels_join():
    """Test 8-connectivity across a diagonal"""
    mask = np.zeros((5, 5), dtype=bool)
    mask[0, 0] = mask[1, 1] = mask[2, 2] = True
    mask[4, 0] = True
    labels, components = label_components(_binary(mask))
    assert len(components) == 2
    assert labels[0, 0] == labels[2, 2] != labels[4, 0]
    assert components[0] == Component(1, 3, BoundingBox(0, 0, 3, 3), 3 / 9)


def test_label_anti_diagonal_across_blocks():
    """Test an up-right diagonal link between neighbouring blocks"""
    mask = np.zeros((4, 4), dtype=bool)
    mask[2, 1] = True
    mask[1, 2] = True
    _, components = label_components(_binary(mask))
    assert len(components) == 1


def test_label_odd_dimensions():
    """Test frames whose sides are not multiples of the block size"""
    mask = np.zeros((5, 7), dtype=bool)
    mask[4, :] = True
    mask[0, 6] = True
    labels, components = label_components(_binary(mask))
    assert labels.shape == (5, 7)
    assert sorted(c.area for c in components) == [1, 7]


def test_label_u_shape_merges():
    """Test that two arms joined at the bottom end up in one component"""
    mask = np.zeros((10, 10), dtype=bool)
    mask[0:9, 1] = True
    mask[0:9, 8] = True
    mask[9, 1:9] = True
    labels, components = label_components(_binary(mask))
    assert len(components) == 1
    assert components[0].area == int(mask.sum())


def test_label_rejects_non_binary():
    """Test that gray levels other than 0 and 255 are refused"""
    frame = Frame(np.array([[0, 128]], dtype=np.uint8))
    with pytest.raises(ValueError, match="binary"):
        label_components(frame)


def test_label_matches_reference_quick():
    """Test labeling against scipy on a few random masks"""
    for seed in range(20):
        _check_against_reference(seed)


@pytest.mark.slow
def test_label_matches_reference_many_seeds():
    """Test labeling against scipy on 1000 random masks of varied shape"""
    for seed in range(1000):
        rng = np.random.default_rng(seed)
        shape = (int(rng.integers(1, 40)), int(rng.integers(1, 40)))
        _check_against_reference(seed, shape, float(rng.uniform(0.1, 0.7)))


# Candidates

def test_in_margin_bands():
    """Test top and bottom margin rows"""
    assert in_margin(5, 100, 0.1)
    assert not in_margin(10, 100, 0.1)
    assert not in_margin(89, 100, 0.1)
    assert in_margin(90, 100, 0.1)


def test_filter_candidates_gates():
    """Test area, margin and shape gates"""
    params = CandidateFilterParams()
    keep = Component(1, 360, BoundingBox(10, 40, 12, 30), 1.0)
    tiny = Component(2, 30, BoundingBox(0, 40, 6, 5), 1.0)
    huge = Component(3, 20000, BoundingBox(0, 0, 200, 100), 1.0)
    low = Component(4, 360, BoundingBox(30, 160, 12, 30), 1.0)
    sparse = Component(5, 100, BoundingBox(50, 40, 20, 20), 0.25)
    assert filter_candidates([keep, tiny, huge, low, sparse], 200, params) == [keep]


def _random_components(rng, count=60):
    components = []
    for label in range(1, count + 1):
        w, h = (int(v) for v in rng.integers(1, 120, size=2))
        x, y = (int(v) for v in rng.integers(0, 80, size=2))
        area = int(rng.integers(1, w * h + 1))
        components.append(Component(label, area, BoundingBox(x, y, w, h), area / (w * h)))
    return components


def test_filter_candidates_order_independent_and_monotone(rng):
    """Test that survivors do not depend on input order and stricter gates keep a subset"""
    components = _random_components(rng)
    loose = CandidateFilterParams(min_area=20, max_area=8000, margin_fraction=0.05, min_area_ratio=0.3)
    strict = CandidateFilterParams(min_area=60, max_area=4000, margin_fraction=0.15, min_area_ratio=0.6)

    kept = {c.label for c in filter_candidates(components, 200, loose)}
    for _ in range(5):
        shuffled = [components[i] for i in rng.permutation(len(components))]
        assert {c.label for c in filter_candidates(shuffled, 200, loose)} == kept

    assert {c.label for c in filter_candidates(components, 200, strict)} <= kept


def test_candidate_params_validation():
    """Test filter parameter validation"""
    with pytest.raises(ValueError):
        CandidateFilterParams(min_area=100, max_area=50)
    with pytest.raises(ValueError):
        CandidateFilterParams(margin_fraction=0.5)
    with pytest.raises(ValueError):
        CandidateFilterParams(adaptive_window=30)


def test_pedestrian_candidate_silhouette():
    """Test that an upright silhouette mid-frame yields exactly its box"""
    pixels = np.full((160, 120), 20, dtype=np.uint8)
    pixels[65:95, 54:66] = 200
    assert pedestrian_candidates(Frame(pixels)) == [BoundingBox(54, 65, 12, 30)]


def test_pedestrian_candidate_in_bottom_margin():
    """Test that a silhouette ending in the bottom band is dropped"""
    pixels = np.full((160, 120), 20, dtype=np.uint8)
    pixels[130:160, 54:66] = 200
    assert pedestrian_candidates(Frame(pixels)) == []


def test_pedestrian_candidate_too_small():
    """Test that specks below the area gate are dropped"""
    pixels = np.full((160, 120), 20, dtype=np.uint8)
    pixels[70:75, 50:55] = 200
    assert pedestrian_candidates(Frame(pixels)) == []


def test_segmentation_method_outputs_boxes(rgb_frame):
    """Test that the segmentation method accepts RGB input"""
    method = SegmentationMethod()
    assert method.output_kind == "boxes"
    method.initialize({})
    boxes = method.process(rgb_frame)
    assert all(isinstance(b, BoundingBox) for b in boxes)
