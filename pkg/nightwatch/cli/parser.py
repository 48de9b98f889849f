# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
NightWatch command line

Usage:
    nightwatch enhance --method gamma --gamma 3.5 --in frames/ --out g35/
    nightwatch segment --in frames/ --out candidates.jsonl
    nightwatch train pos/ neg/ --seed 7 --out person.nwsvm
    nightwatch detect --in frames/ --model person.nwsvm --out dets.jsonl --annotate boxed/
    nightwatch bench --suite all --in frames/ --gt gt.csv --model person.nwsvm \\
        --ingest yolo=yolo.jsonl:2.1 --report report.csv
    nightwatch synth --out scene/ --frames 120 --start 40 --size 640x480 --seed 1

Exit codes: 0 success, 1 runtime failure, 2 invalid arguments.
"""

import argparse

from ..__version__ import __version__
from ..bench.registry import SUITES

ENHANCE_METHODS = ("gamma", "he", "clahe", "threshold", "canny", "harris", "motion")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


def _common(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("run options")
    group.add_argument(
        '--config',
        help='YAML run configuration (flat key-value); flags override it'
    )
    group.add_argument(
        '--log-level',
        choices=LOG_LEVELS,
        default=None,
        help='Diagnostics level on stderr (default: INFO)'
    )
    group.add_argument(
        '--log-config',
        help='YAML logging configuration (dictConfig)'
    )


def _input(parser: argparse.ArgumentParser, required: bool = False) -> None:
    parser.add_argument(
        '--in',
        dest='input',
        required=required,
        help='Frame directory or glob pattern'
    )
    parser.add_argument(
        '--fps',
        type=float,
        help='Sequence frame rate (default: 24)'
    )


def _jobs(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        '--jobs',
        type=int,
        help='Worker threads for stateless methods (default: 1)'
    )


def _pyramid(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("detector")
    group.add_argument('--score-threshold', type=float, help='Decision cutoff (default: from the model)')
    group.add_argument('--scale-step', type=float, help='Pyramid scale factor per level (default: 1.05)')
    group.add_argument('--stride', dest='window_stride', type=int, help='Window stride in pixels (default: 8)')
    group.add_argument('--nms-iou', type=float, help='Suppression overlap (default: 0.3)')
    group.add_argument('--max-levels', type=int, help='Pyramid levels at most (default: 64)')


def _training(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("training")
    group.add_argument('--lambda', dest='svm_lambda', type=float, help='Regularization (default: 0.01)')
    group.add_argument('--epochs', type=int, help='Training epochs (default: 100)')
    group.add_argument('--seed', type=int, help='Shuffle / sampling seed (default: 0)')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='nightwatch',
        description='Low-light pedestrian detection toolkit',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    sub = parser.add_subparsers(dest='command', metavar='COMMAND', required=True)

    # enhance
    enhance = sub.add_parser('enhance', help='Apply one enhancement technique to every frame')
    _input(enhance, required=True)
    enhance.add_argument('--out', dest='output', required=True, help='Output directory')
    enhance.add_argument('--method', required=True, choices=ENHANCE_METHODS, help='Technique')
    enhance.add_argument('--gamma', type=float, help='Gamma (default: 3.5)')
    enhance.add_argument('--tiles', help='CLAHE tile grid TXxTY (default: 8x8)')
    enhance.add_argument('--clip', type=float, help='CLAHE clip limit, inf disables (default: 2.0)')
    enhance.add_argument('--t', type=int, help='Binary threshold (default: 128)')
    enhance.add_argument('--sigma', type=float, help='Canny smoothing sigma (default: 1.0)')
    enhance.add_argument('--low', type=float, help='Canny low threshold (default: 40)')
    enhance.add_argument('--high', type=float, help='Canny high threshold (default: 120)')
    enhance.add_argument('--harris-k', type=float, help='Harris k (default: 0.04)')
    enhance.add_argument('--harris-threshold', type=float,
                         help='Harris response fraction of the maximum (default: 0.01)')
    enhance.add_argument('--shadows', choices=('on', 'off'), help='GMM shadow labeling (default: on)')
    enhance.add_argument('--learning-rate', type=float, help='GMM learning rate (default: 0.005)')
    _jobs(enhance)
    _common(enhance)

    # segment
    segment = sub.add_parser('segment', help='Pedestrian candidates as JSON lines')
    _input(segment, required=True)
    segment.add_argument('--out', dest='output', help='JSON-lines file (default: stdout)')
    segment.add_argument('--annotate', help='Directory for frames with candidate boxes drawn')
    segment.add_argument('--min-area', type=int, help='Smallest component kept (default: 50)')
    segment.add_argument('--max-area', type=int, help='Largest component kept (default: 10000)')
    segment.add_argument('--margin', dest='margin_fraction', type=float,
                         help='Top/bottom row fraction excluded (default: 0.10)')
    segment.add_argument('--min-area-ratio', type=float, help='Smallest area/bbox ratio (default: 0.5)')
    segment.add_argument('--window', dest='adaptive_window', type=int,
                         help='Adaptive threshold window, odd (default: 31)')
    segment.add_argument('--offset', dest='adaptive_offset', type=int,
                         help='Adaptive threshold offset (default: 10)')
    _jobs(segment)
    _common(segment)

    # detect
    detect = sub.add_parser('detect', help='HOG + SVM detections as JSON lines')
    _input(detect, required=True)
    source = detect.add_mutually_exclusive_group(required=True)
    source.add_argument('--model', help='NWSVM1 model file')
    source.add_argument('--train', nargs=2, metavar=('POS', 'NEG'), help='Train from crop directories first')
    detect.add_argument('--out', dest='output', help='JSON-lines file (default: stdout)')
    detect.add_argument('--annotate', help='Directory for frames with detections drawn')
    _pyramid(detect)
    _training(detect)
    _jobs(detect)
    _common(detect)

    # train
    train = sub.add_parser('train', help='Train a linear SVM on HOG descriptors')
    train.add_argument('pos', help='Directory of positive window crops')
    train.add_argument('neg', help='Directory of negative images')
    train.add_argument('--out', dest='output', required=True, help='Model file to write')
    train.add_argument('--score-threshold', type=float, help='Decision cutoff stored in the model (default: 0)')
    train.add_argument('--hard-negatives', help='Directory of person-free frames for one mining pass')
    train.add_argument('--windows-per-negative', type=int, default=10,
                       help='Random windows per large negative image (default: 10)')
    _training(train)
    _common(train)

    # bench
    bench = sub.add_parser('bench', help='Time methods and evaluate detectors')
    _input(bench, required=True)
    bench.add_argument('--suite', choices=SUITES, default='enhance', help='Methods to run (default: enhance)')
    bench.add_argument('--gt', dest='ground_truth', help='Ground-truth CSV (required for detect)')
    bench.add_argument('--model', help='NWSVM1 model for the HOG + SVM row')
    bench.add_argument('--ingest', action='append', default=[], metavar='NAME=PATH[:SECONDS]',
                       help='External detector JSON lines, optionally with its processing time')
    bench.add_argument('--report', required=True, help='Report path')
    bench.add_argument('--format', choices=('csv', 'json'), help='Report format (default: from suffix)')
    bench.add_argument('--warmup', dest='warmup_frames', type=int, help='Untimed warmup frames (default: 5)')
    bench.add_argument('--iou-min', type=float, help='Match overlap for first detection (default: 0.5)')
    bench.add_argument('--metrics-port', type=int, help='Expose Prometheus metrics on this port')
    _pyramid(bench)
    _jobs(bench)
    _common(bench)

    # synth
    synth = sub.add_parser('synth', help='Write a synthetic night sequence with ground truth')
    synth.add_argument('--out', dest='output', required=True, help='Output directory')
    synth.add_argument('--frames', type=int, default=120, help='Sequence length (default: 120)')
    synth.add_argument('--start', type=int, default=40, help='First frame with the pedestrian (default: 40)')
    synth.add_argument('--size', default='640x480', help='Frame size WxH (default: 640x480)')
    synth.add_argument('--seed', type=int, default=1, help='Noise seed (default: 1)')
    synth.add_argument('--fps', type=float, default=24.0, help='Frame rate (default: 24)')
    synth.add_argument('--training-set', help='Also write pos/ and neg/ crops here')
    _common(synth)

    return parser
