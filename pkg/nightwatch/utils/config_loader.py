# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Configuration Loader

Flat YAML run configurations and NIGHTWATCH_<KEY> environment overrides.
"""

import os
from pathlib import Path
from typing import Any, Dict, Iterable, Mapping, Optional, Union

import yaml

ENV_PREFIX = "NIGHTWATCH_"


class ConfigLoader:
    """Load YAML configuration files and environment overrides."""

    @staticmethod
    def load(config_path: Union[str, Path], required_keys: Optional[Iterable[str]] = None) -> Dict[str, Any]:
        """
        Load a YAML mapping. An empty file is an empty mapping.

        Raises:
            FileNotFoundError: If the file does not exist
            ValueError: If the top level is not a mapping or required keys are missing
            yaml.YAMLError: If the YAML is malformed
        """
        path = Path(config_path)
        if not path.is_file():
            raise FileNotFoundError(f"Configuration file not found: {config_path}")

        with open(path, "r", encoding="utf-8") as f:
            config = yaml.safe_load(f)
        if config is None:
            return {}
        if not isinstance(config, dict):
            raise ValueError(f"Configuration must be a key-value mapping: {config_path}")

        missing = [key for key in (required_keys or ()) if key not in config]
        if missing:
            raise ValueError(f"Missing required configuration keys: {missing}")
        return config

    @staticmethod
    def env_overrides(env_prefix: str = ENV_PREFIX,
                      environ: Optional[Mapping[str, str]] = None) -> Dict[str, Any]:
        """
        <PREFIX><KEY>=value pairs as {key.lower(): value}.

        Values are read as YAML scalars, so NIGHTWATCH_FPS=30 is the integer
        30 and NIGHTWATCH_SHADOWS=off is False. Empty values stay "".
        """
        environ = os.environ if environ is None else environ
        overrides = {}
        for name, raw in environ.items():
            if not name.startswith(env_prefix) or name == env_prefix:
                continue
            overrides[name[len(env_prefix):].lower()] = yaml.safe_load(raw) if raw else raw
        return overrides

    @staticmethod
    def load_with_env_override(config_path: Optional[Union[str, Path]],
                               env_prefix: str = ENV_PREFIX) -> Dict[str, Any]:
        """File values (none when config_path is None) with environment overrides applied."""
        config = ConfigLoader.load(config_path) if config_path else {}
        config.update(ConfigLoader.env_overrides(env_prefix))
        return config
