# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Run Configuration

A flat key-value mapping assembled from four sources, highest first:
command-line flags, NIGHTWATCH_<KEY> environment variables, the YAML
config file, built-in defaults. Unknown keys are rejected and values are
coerced to the declared field type.
"""

import math
from dataclasses import dataclass, fields
from typing import Any, Dict, Mapping, Optional, Tuple, get_type_hints

from ..bench.registry import MethodSettings
from ..detect.models import HogParams, PyramidParams
from ..enhance.gamma import GammaParams
from ..enhance.histogram import ClaheParams
from ..motionedge.canny import CannyParams
from ..motionedge.gmm import GmmParams
from ..motionedge.harris import HarrisParams
from ..segment.candidates import CandidateFilterParams
from ..utils.config_loader import ENV_PREFIX, ConfigLoader
from ..utils.validators import require_int, require_positive

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def parse_bool(value: Any) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in _TRUE:
        return True
    if text in _FALSE:
        return False
    raise ValueError(f"Expected on/off, got {value!r}")


def parse_size(value: str, name: str = "size") -> Tuple[int, int]:
    """'WxH' -> (W, H), both positive."""
    try:
        left, right = str(value).lower().split("x")
        size = int(left), int(right)
    except ValueError as e:
        raise ValueError(f"{name} must look like WxH, got {value!r}") from e
    if size[0] <= 0 or size[1] <= 0:
        raise ValueError(f"{name} must be positive, got {value!r}")
    return size


def _optional(kind):
    def convert(value):
        return None if value is None or value == "" else kind(value)
    return convert


def _int(value) -> int:
    if isinstance(value, bool):
        raise ValueError(f"Expected an integer, got {value!r}")
    if isinstance(value, float):
        if not value.is_integer():
            raise ValueError(f"Expected an integer, got {value!r}")
        return int(value)
    return int(value)


def _float(value) -> float:
    if isinstance(value, bool):
        raise ValueError(f"Expected a number, got {value!r}")
    result = float(value)
    if math.isnan(result):
        raise ValueError("NaN is not a valid setting")
    return result


@dataclass(frozen=True)
class RunConfig:
    input: Optional[str] = None
    output: Optional[str] = None
    fps: float = 24.0
    ground_truth: Optional[str] = None
    warmup_frames: int = 5
    jobs: int = 1
    # enhancement
    gamma: float = 3.5
    tiles: str = "8x8"
    clip: float = 2.0
    t: int = 128
    # edges, corners, motion
    sigma: float = 1.0
    low: float = 40.0
    high: float = 120.0
    harris_k: float = 0.04
    harris_threshold: float = 0.01
    shadows: bool = True
    learning_rate: float = 0.005
    background_fraction: float = 0.9
    # segmentation
    min_area: int = 50
    max_area: int = 10000
    margin_fraction: float = 0.10
    min_area_ratio: float = 0.5
    adaptive_window: int = 31
    adaptive_offset: int = 10
    # detection
    scale_step: float = 1.05
    window_stride: int = 8
    nms_iou: float = 0.3
    max_levels: int = 64
    score_threshold: Optional[float] = None
    svm_lambda: float = 0.01
    epochs: int = 100
    seed: int = 0
    iou_min: float = 0.5

    def __post_init__(self):
        require_positive("fps", self.fps)
        require_int("jobs", self.jobs, minimum=1)
        require_int("warmup_frames", self.warmup_frames, minimum=0)

    @classmethod
    def coercers(cls) -> Dict[str, Any]:
        kinds = {int: _int, float: _float, str: str, bool: parse_bool,
                 Optional[str]: _optional(str), Optional[float]: _optional(_float)}
        hints = get_type_hints(cls)
        return {f.name: kinds[hints[f.name]] for f in fields(cls)}

    @classmethod
    def from_mapping(cls, values: Mapping[str, Any], source: str = "config") -> "RunConfig":
        """
        Raises:
            ValueError: For unknown keys or values of the wrong type
        """
        coercers = cls.coercers()
        unknown = sorted(set(values) - set(coercers))
        if unknown:
            raise ValueError(f"Unknown {source} keys: {unknown}")
        coerced = {}
        for key, value in values.items():
            try:
                coerced[key] = coercers[key](value)
            except (TypeError, ValueError) as e:
                raise ValueError(f"Invalid {source} value for '{key}': {value!r}") from e
        return cls(**coerced)

    @classmethod
    def from_sources(cls, config_path: Optional[str] = None,
                     cli_overrides: Optional[Mapping[str, Any]] = None,
                     env_prefix: str = ENV_PREFIX) -> "RunConfig":
        """
        Merge file, environment and flags (None-valued flags are ignored).

        Raises:
            FileNotFoundError: If config_path is given but missing
            ValueError: For unknown keys or invalid values
        """
        merged: Dict[str, Any] = {}
        file_values = ConfigLoader.load(config_path) if config_path else {}
        cls.from_mapping(file_values, "config file")
        merged.update(file_values)

        env_values = ConfigLoader.env_overrides(env_prefix)
        cls.from_mapping(env_values, "environment")
        merged.update(env_values)

        flags = {k: v for k, v in (cli_overrides or {}).items() if v is not None}
        merged.update(flags)
        return cls.from_mapping(merged)

    def clahe_params(self) -> ClaheParams:
        tiles_x, tiles_y = parse_size(self.tiles, "tiles")
        return ClaheParams(tiles_x=tiles_x, tiles_y=tiles_y, clip_limit=self.clip)

    def gmm_params(self) -> GmmParams:
        return GmmParams(learning_rate=self.learning_rate,
                         background_fraction=self.background_fraction,
                         detect_shadows=self.shadows)

    def pyramid_params(self) -> PyramidParams:
        return PyramidParams(scale_step=self.scale_step, window_stride=self.window_stride,
                             nms_iou=self.nms_iou, max_levels=self.max_levels)

    def method_settings(self) -> MethodSettings:
        """
        Parameter objects for every method.

        Raises:
            ValueError: If any parameter is out of range
        """
        return MethodSettings(
            gamma=GammaParams(self.gamma),
            clahe=self.clahe_params(),
            threshold=self.t,
            canny=CannyParams(self.sigma, self.low, self.high),
            harris=HarrisParams(k=self.harris_k, response_threshold=self.harris_threshold),
            gmm=self.gmm_params(),
            candidates=CandidateFilterParams(
                min_area=self.min_area, max_area=self.max_area,
                margin_fraction=self.margin_fraction, min_area_ratio=self.min_area_ratio,
                adaptive_window=self.adaptive_window, adaptive_offset=self.adaptive_offset,
            ),
            hog=HogParams(),
            pyramid=self.pyramid_params(),
        )
