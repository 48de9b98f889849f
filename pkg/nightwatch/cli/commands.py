# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Subcommand implementations.

Every command is split in two: prepare_<command>(args) validates flags,
configuration and inputs and returns a job; the job does the work. Errors
raised while preparing are argument errors (exit 2), errors raised by the
job are runtime failures (exit 1). Nothing is written before the job runs.
"""

import json
import re
import sys
from contextlib import contextmanager
from dataclasses import fields
from pathlib import Path
from typing import Callable, Iterator, List, Optional, Sequence, TextIO, Tuple

from ..bench.ground_truth import load_ground_truth
from ..bench.ingest import ingest_external_detections
from ..bench.registry import ExternalDetector, build_method, run_suite
from ..bench.report import write_report, write_report_notes
from ..bench.synthetic import SceneParams, write_scene, write_training_set
from ..bench.timing import time_method
from ..detect.export import tag_frame, write_detections
from ..detect.models import Detection, LinearModel
from ..detect.svm import load_model, save_model
from ..detect.training import load_training_set, train_detector
from ..frameio.annotate import draw_boxes
from ..frameio.frame import BoundingBox, Frame, SequenceMeta
from ..frameio.pnm import default_suffix, save_frame
from ..frameio.sequence import load_sequence
from ..logging import get_logger
from ..monitoring import start_metrics_server
from .config import RunConfig, parse_size

logger = get_logger(__name__, component="cli")

Job = Callable[[], None]

RUN_KEYS = tuple(f.name for f in fields(RunConfig))
CORNER_MARK = 5
_INGEST = re.compile(r"^(?P<name>[^=]+)=(?P<path>.+?)(?::(?P<seconds>[0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?))?$")


def run_config(args) -> RunConfig:
    overrides = {key: getattr(args, key) for key in RUN_KEYS if hasattr(args, key)}
    return RunConfig.from_sources(args.config, overrides)


def _load_frames(config: RunConfig) -> Tuple[List[Frame], SequenceMeta]:
    if not config.input:
        raise ValueError("No input frames given (--in)")
    return load_sequence(config.input, config.fps)


def _frame_indices(meta: SequenceMeta, count: int) -> List[int]:
    return list(meta.frame_indices) if meta.frame_indices else list(range(count))


def _require_directory_target(path: Optional[str], flag: str) -> Optional[Path]:
    if path is None:
        return None
    target = Path(path)
    if target.exists() and not target.is_dir():
        raise ValueError(f"{flag} must be a directory: {target}")
    return target


def _require_file_target(path: Optional[str], flag: str) -> Optional[Path]:
    if path is None:
        return None
    target = Path(path)
    if target.is_dir():
        raise ValueError(f"{flag} must be a file path, got directory {target}")
    return target


@contextmanager
def _output_stream(path: Optional[Path]) -> Iterator[TextIO]:
    if path is None:
        yield sys.stdout
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        yield f


def _save_indexed(frames: Sequence[Frame], indices: Sequence[int], directory: Path) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    for index, frame in zip(indices, frames):
        save_frame(frame, directory / f"frame_{index:04d}{default_suffix(frame)}")


def _corner_boxes(corners, width: int, height: int) -> List[Tuple[BoundingBox, str, None]]:
    half = CORNER_MARK // 2
    boxes = []
    for x, y, _ in corners:
        x0, y0 = max(0, x - half), max(0, y - half)
        x1, y1 = min(width, x + half + 1), min(height, y + half + 1)
        boxes.append((BoundingBox(x0, y0, x1 - x0, y1 - y0), "", None))
    return boxes


# enhance

def prepare_enhance(args) -> Job:
    config = run_config(args)
    if not config.output:
        raise ValueError("No output directory given (--out)")
    method = build_method(args.method, config.method_settings())
    out_dir = _require_directory_target(config.output, "--out")
    frames, meta = _load_frames(config)
    indices = _frame_indices(meta, len(frames))
    if frames[0].channels == 3 and args.method in ("he", "clahe", "threshold", "canny", "harris", "motion"):
        logger.info(f"{method.name} works on luma; RGB input is converted to gray")

    def job() -> None:
        outputs: list = []
        time_method(method, frames, warmup_frames=0, outputs=outputs, jobs=config.jobs)
        if method.output_kind == "corners":
            outputs = [draw_boxes(frame, _corner_boxes(corners, frame.width, frame.height))
                       for frame, corners in zip(frames, outputs)]
        _save_indexed(outputs, indices, out_dir)
        logger.info(f"Wrote {len(outputs)} frames to {out_dir}")

    return job


# segment

def prepare_segment(args) -> Job:
    config = run_config(args)
    method = build_method("segment", config.method_settings())
    out_path = _require_file_target(config.output, "--out")
    annotate = _require_directory_target(args.annotate, "--annotate")
    frames, meta = _load_frames(config)
    indices = _frame_indices(meta, len(frames))

    def job() -> None:
        outputs: list = []
        time_method(method, frames, warmup_frames=0, outputs=outputs, jobs=config.jobs)
        with _output_stream(out_path) as stream:
            for index, boxes in zip(indices, outputs):
                record = {"frame": index, "boxes": [b.as_list() for b in boxes]}
                stream.write(json.dumps(record) + "\n")
        if annotate is not None:
            drawn = [draw_boxes(frame, [(b, "", None) for b in boxes]) for frame, boxes in zip(frames, outputs)]
            _save_indexed(drawn, indices, annotate)

    return job


# detect / train

def _trained_model(config: RunConfig, pos: str, neg: str, hard_negatives: Optional[str] = None,
                   windows_per_negative: int = 10) -> LinearModel:
    settings = config.method_settings()
    positives, negatives = load_training_set(pos, neg, settings.hog, config.seed, windows_per_negative)
    negative_frames = load_sequence(hard_negatives)[0] if hard_negatives else None
    threshold = 0.0 if config.score_threshold is None else config.score_threshold
    return train_detector(
        positives, negatives, negative_frames,
        lam=config.svm_lambda, epochs=config.epochs, seed=config.seed,
        score_threshold=threshold, hog=settings.hog, pyr=settings.pyramid,
    )


def _model_with_threshold(model: LinearModel, config: RunConfig) -> LinearModel:
    if config.score_threshold is None:
        return model
    return model.with_threshold(config.score_threshold)


def prepare_detect(args) -> Job:
    config = run_config(args)
    settings = config.method_settings()
    out_path = _require_file_target(config.output, "--out")
    annotate = _require_directory_target(args.annotate, "--annotate")
    model = None
    if args.model:
        model = _model_with_threshold(load_model(args.model), config)
        build_method("hog", settings, model).initialize({})
    else:
        for directory in args.train:
            if not Path(directory).is_dir():
                raise FileNotFoundError(f"Training directory not found: {directory}")
    frames, meta = _load_frames(config)
    indices = _frame_indices(meta, len(frames))

    def job() -> None:
        detector_model = model or _trained_model(config, *args.train)
        method = build_method("hog", settings, detector_model)
        outputs: list = []
        time_method(method, frames, warmup_frames=0, outputs=outputs, jobs=config.jobs)
        per_frame: List[List[Detection]] = [tag_frame(dets, i) for i, dets in zip(indices, outputs)]
        with _output_stream(out_path) as stream:
            count = sum(write_detections(stream, dets) for dets in per_frame)
        logger.info(f"Emitted {count} detections")
        if annotate is not None:
            drawn = [draw_boxes(frame, [(d.bbox, d.label, d.score) for d in dets])
                     for frame, dets in zip(frames, per_frame)]
            _save_indexed(drawn, indices, annotate)

    return job


def prepare_train(args) -> Job:
    config = run_config(args)
    config.method_settings()
    out_path = _require_file_target(config.output, "--out")
    for directory in (args.pos, args.neg) + ((args.hard_negatives,) if args.hard_negatives else ()):
        if not Path(directory).is_dir():
            raise FileNotFoundError(f"Directory not found: {directory}")
    if args.windows_per_negative < 1:
        raise ValueError("--windows-per-negative must be >= 1")

    def job() -> None:
        model = _trained_model(config, args.pos, args.neg, args.hard_negatives, args.windows_per_negative)
        save_model(model, out_path)

    return job


# bench

def parse_ingest(spec: str) -> Tuple[str, Path, Optional[float]]:
    """NAME=PATH[:SECONDS] -> (name, path, seconds or None)."""
    match = _INGEST.match(spec)
    if match is None:
        raise ValueError(f"--ingest expects NAME=PATH[:SECONDS], got {spec!r}")
    seconds = match.group("seconds")
    if seconds is not None and not float(seconds) > 0:
        raise ValueError(f"--ingest processing time must be > 0, got {seconds}")
    return match.group("name").strip(), Path(match.group("path")), None if seconds is None else float(seconds)


def prepare_bench(args) -> Job:
    config = run_config(args)
    settings = config.method_settings()
    if args.suite in ("detect", "all") and not config.ground_truth:
        raise ValueError(f"--suite {args.suite} requires --gt")
    if args.suite in ("detect", "all") and not (args.model or args.ingest):
        raise ValueError(f"--suite {args.suite} requires --model or --ingest")
    if args.metrics_port is not None and not 0 < args.metrics_port < 65536:
        raise ValueError(f"--metrics-port out of range: {args.metrics_port}")
    report = _require_file_target(args.report, "--report")

    truth = load_ground_truth(config.ground_truth, default_fps=config.fps) if config.ground_truth else None
    model = _model_with_threshold(load_model(args.model), config) if args.model else None
    externals = []
    for spec in args.ingest:
        name, path, seconds = parse_ingest(spec)
        externals.append(ExternalDetector(name, ingest_external_detections(path), seconds))
    frames, meta = _load_frames(config)
    if truth is not None:
        truth.validate(max(_frame_indices(meta, len(frames))) + 1, frames[0].width, frames[0].height)

    def job() -> None:
        if args.metrics_port is not None:
            start_metrics_server(args.metrics_port)
        records = run_suite(
            args.suite, frames, settings, model=model, externals=externals, truth=truth,
            warmup_frames=config.warmup_frames, jobs=config.jobs, iou_min=config.iou_min,
            frame_indices=_frame_indices(meta, len(frames)),
        )
        write_report(records, report, args.format)
        notes = write_report_notes(report, truth, records)
        logger.info(f"Report notes written to {notes}")

    return job


# synth

def prepare_synth(args) -> Job:
    width, height = parse_size(args.size)
    params = SceneParams(width=width, height=height, frames=args.frames, start=args.start,
                         fps=args.fps, seed=args.seed)
    out_dir = _require_directory_target(args.output, "--out")
    training = _require_directory_target(args.training_set, "--training-set")

    def job() -> None:
        write_scene(params, out_dir)
        if training is not None:
            write_training_set(training, seed=args.seed)

    return job


COMMANDS = {
    "enhance": prepare_enhance,
    "segment": prepare_segment,
    "detect": prepare_detect,
    "train": prepare_train,
    "bench": prepare_bench,
    "synth": prepare_synth,
}
