# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Tests for the Command Line

Drives nightwatch.main.main() end to end on small sequences written to a
temporary directory.
"""

import json
import os

import pytest
import numpy as np

from nightwatch.bench.report import notes_path, read_report
from nightwatch.bench.synthetic import write_training_set
from nightwatch.cli.commands import parse_ingest
from nightwatch.detect import LinearModel, save_model
from nightwatch.frameio import Frame, load_frame, save_sequence
from nightwatch.main import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, main

DESCRIPTOR_LENGTH = 3780


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    """Keep NIGHTWATCH_* variables from the outer environment out of the tests"""
    for key in list(os.environ):
        if key.startswith("NIGHTWATCH_"):
            monkeypatch.delenv(key)


@pytest.fixture
def frame_dir(temp_dir, dark_frames):
    directory = temp_dir / "frames"
    save_sequence(dark_frames, directory)
    return directory


# Parser

def test_help_and_version(capsys):
    """Test that --help and --version exit cleanly"""
    assert main(["--help"]) == EXIT_OK
    assert main(["--version"]) == EXIT_OK
    assert "nightwatch" in capsys.readouterr().out


def test_missing_command_is_usage_error():
    """Test that a bare invocation is an argument error"""
    assert main([]) == EXIT_USAGE


def test_parse_ingest():
    """Test NAME=PATH[:SECONDS] parsing"""
    assert parse_ingest("YOLO=out/yolo.jsonl:2.1")[::2] == ("YOLO", 2.1)
    name, path, seconds = parse_ingest("ssd=dets.jsonl")
    assert (name, path.name, seconds) == ("ssd", "dets.jsonl", None)
    with pytest.raises(ValueError):
        parse_ingest("no-equals-sign")
    with pytest.raises(ValueError):
        parse_ingest("x=dets.jsonl:0")


# enhance

def test_enhance_gamma_writes_frames(frame_dir, temp_dir, dark_frames):
    """Test that every input frame gets an enhanced counterpart"""
    out = temp_dir / "gamma"
    code = main(["enhance", "--method", "gamma", "--gamma", "2.0", "--in", str(frame_dir), "--out", str(out)])
    assert code == EXIT_OK
    written = sorted(p.name for p in out.iterdir())
    assert written == [f"frame_{i:04d}.pgm" for i in range(len(dark_frames))]
    first = load_frame(out / "frame_0000.pgm")
    assert first.pixels.mean() > dark_frames[0].pixels.mean()


def test_enhance_harris_writes_color_frames(frame_dir, temp_dir):
    """Test that corner output is drawn onto RGB frames"""
    out = temp_dir / "corners"
    code = main(["enhance", "--method", "harris", "--in", str(frame_dir), "--out", str(out)])
    assert code == EXIT_OK
    assert all(p.suffix == ".ppm" for p in out.iterdir())
    assert load_frame(out / "frame_0000.ppm").channels == 3


def test_enhance_rejects_bad_parameter(frame_dir, temp_dir):
    """Test that an invalid gamma is an argument error and writes nothing"""
    out = temp_dir / "bad"
    code = main(["enhance", "--method", "gamma", "--gamma", "-1", "--in", str(frame_dir), "--out", str(out)])
    assert code == EXIT_USAGE
    assert not out.exists()


def test_enhance_missing_input(temp_dir):
    """Test that a missing input directory is an argument error"""
    code = main(["enhance", "--method", "he", "--in", str(temp_dir / "absent"), "--out", str(temp_dir / "o")])
    assert code == EXIT_USAGE


def test_config_file_supplies_parameters(frame_dir, temp_dir):
    """Test that a YAML config can carry the run parameters"""
    config = temp_dir / "run.yaml"
    config.write_text("gamma: -2.0\n", encoding="utf-8")
    code = main(["enhance", "--method", "gamma", "--in", str(frame_dir),
                 "--out", str(temp_dir / "o"), "--config", str(config)])
    assert code == EXIT_USAGE


# segment

def test_segment_writes_json_lines(frame_dir, dark_frames, capsys):
    """Test one JSON object per frame on stdout"""
    assert main(["segment", "--in", str(frame_dir)]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    records = [json.loads(line) for line in lines]
    assert [r["frame"] for r in records] == list(range(len(dark_frames)))
    assert all(isinstance(r["boxes"], list) for r in records)


def test_output_under_regular_file_is_runtime_failure(frame_dir, temp_dir):
    """Test that an unwritable output path fails at run time"""
    blocker = temp_dir / "blocker"
    blocker.write_text("x", encoding="utf-8")
    code = main(["segment", "--in", str(frame_dir), "--out", str(blocker / "sub" / "out.jsonl")])
    assert code == EXIT_FAILURE


# train / detect

def test_train_is_deterministic(temp_dir):
    """Test that identical inputs and seed give byte-identical models"""
    pos, neg = write_training_set(temp_dir / "set", positives=4, negatives=6)
    first, second = temp_dir / "a.nwsvm", temp_dir / "b.nwsvm"
    for out in (first, second):
        code = main(["train", str(pos), str(neg), "--out", str(out), "--epochs", "5", "--seed", "3"])
        assert code == EXIT_OK
    assert first.read_bytes() == second.read_bytes()


def test_train_missing_directory(temp_dir):
    """Test that a missing crop directory is an argument error"""
    code = main(["train", str(temp_dir / "pos"), str(temp_dir / "neg"), "--out", str(temp_dir / "m.nwsvm")])
    assert code == EXIT_USAGE


@pytest.fixture
def window_frames(temp_dir):
    directory = temp_dir / "windows"
    frames = [Frame(np.full((128, 64), 30, dtype=np.uint8)) for _ in range(2)]
    save_sequence(frames, directory)
    return directory


@pytest.fixture
def always_model(temp_dir):
    path = temp_dir / "always.nwsvm"
    save_model(LinearModel(np.zeros(DESCRIPTOR_LENGTH), bias=1.0), path)
    return path


def test_detect_emits_detections(window_frames, always_model, capsys):
    """Test that every accepted window becomes a JSON line"""
    assert main(["detect", "--in", str(window_frames), "--model", str(always_model)]) == EXIT_OK
    records = [json.loads(line) for line in capsys.readouterr().out.strip().splitlines()]
    assert [r["frame"] for r in records] == [0, 1]
    assert all((r["x"], r["y"], r["w"], r["h"], r["label"]) == (0, 0, 64, 128, "person") for r in records)


def test_detect_threshold_override(window_frames, always_model, capsys):
    """Test that --score-threshold replaces the stored cutoff"""
    code = main(["detect", "--in", str(window_frames), "--model", str(always_model), "--score-threshold", "2"])
    assert code == EXIT_OK
    assert capsys.readouterr().out.strip() == ""


def test_detect_model_and_train_are_exclusive(window_frames, always_model, temp_dir):
    """Test that --model and --train cannot be combined"""
    code = main(["detect", "--in", str(window_frames), "--model", str(always_model),
                 "--train", str(temp_dir), str(temp_dir)])
    assert code == EXIT_USAGE


# bench

def test_bench_enhance_report(frame_dir, temp_dir):
    """Test that the enhancement suite reports every method"""
    report = temp_dir / "report.csv"
    code = main(["bench", "--suite", "enhance", "--in", str(frame_dir), "--report", str(report), "--warmup", "2"])
    assert code == EXIT_OK
    records = read_report(report)
    assert len(records) == 9
    assert all(r.fps > 0 and r.first_detection_frame is None for r in records)
    assert notes_path(report).is_file()


def test_bench_detect_requires_ground_truth(frame_dir, always_model, temp_dir):
    """Test that the detection suite refuses to run without ground truth"""
    code = main(["bench", "--suite", "detect", "--in", str(frame_dir),
                 "--model", str(always_model), "--report", str(temp_dir / "r.csv")])
    assert code == EXIT_USAGE


def test_bench_detect_with_ingested_detector(temp_dir):
    """Test first detection and timing for an external detector"""
    scene = temp_dir / "scene"
    code = main(["synth", "--out", str(scene), "--frames", "70", "--start", "40", "--size", "192x256"])
    assert code == EXIT_OK
    assert (scene / "gt.csv").is_file()

    dets = temp_dir / "yolo.jsonl"
    dets.write_text(
        '{"frame": 12, "x": 100, "y": 0, "w": 20, "h": 20, "score": 0.9, "label": "person"}\n'
        '{"frame": 40, "x": 32, "y": 88, "w": 64, "h": 128, "score": 0.8, "label": "person"}\n',
        encoding="utf-8",
    )
    report = temp_dir / "detect.json"
    code = main(["bench", "--suite", "detect", "--in", str(scene), "--gt", str(scene / "gt.csv"),
                 "--ingest", f"YOLO={dets}:1.5", "--report", str(report)])
    assert code == EXIT_OK

    [record] = read_report(report)
    assert record.method == "YOLO"
    assert record.total_seconds == 1.5
    assert record.fps == pytest.approx(70 / 1.5)
    assert record.first_detection_frame == 40
    assert record.seconds_before_crash == pytest.approx(5 / 24)


def test_bench_ground_truth_without_fps_uses_flag(temp_dir, rng):
    """Test that --fps sets the lead-time clock when the ground truth has no fps mark"""
    frames = [Frame(rng.integers(5, 40, size=(96, 128), dtype=np.uint8)) for _ in range(12)]
    scene = temp_dir / "scene"
    save_sequence(frames, scene)
    gt = temp_dir / "gt.csv"
    gt.write_text("# crash_frame=10\nframe,x,y,w,h,label\n4,10,10,20,40,person\n", encoding="utf-8")
    dets = temp_dir / "ext.jsonl"
    dets.write_text('{"frame": 4, "x": 10, "y": 10, "w": 20, "h": 40}\n', encoding="utf-8")

    report = temp_dir / "r.json"
    code = main(["bench", "--suite", "detect", "--in", str(scene), "--gt", str(gt), "--fps", "30",
                 "--ingest", f"EXT={dets}", "--report", str(report)])
    assert code == EXIT_OK
    [record] = read_report(report)
    assert record.first_detection_frame == 4
    assert record.seconds_before_crash == pytest.approx(0.2)


@pytest.mark.parametrize("value", ["Infinity", "-Infinity", "NaN"])
def test_bench_non_finite_ingest_field_is_usage_error(frame_dir, temp_dir, value):
    """Test that a non-finite coordinate in an external detection file is an input error"""
    gt = temp_dir / "gt.csv"
    gt.write_text("# crash_frame=6\n", encoding="utf-8")
    dets = temp_dir / "ext.jsonl"
    dets.write_text(f'{{"frame": 1, "x": {value}, "y": 0, "w": 8, "h": 8}}\n', encoding="utf-8")
    code = main(["bench", "--suite", "detect", "--in", str(frame_dir), "--gt", str(gt),
                 "--ingest", f"EXT={dets}", "--report", str(temp_dir / "r.csv")])
    assert code == EXIT_USAGE


@pytest.mark.parametrize("flags", [["--jobs", "-3"], ["--jobs", "0"], ["--warmup", "-1"]])
def test_bench_rejects_bad_run_limits(frame_dir, temp_dir, flags):
    """Test that worker and warmup counts are validated before running"""
    report = temp_dir / "r.csv"
    code = main(["bench", "--suite", "enhance", "--in", str(frame_dir), "--report", str(report)] + flags)
    assert code == EXIT_USAGE
    assert not report.exists()
