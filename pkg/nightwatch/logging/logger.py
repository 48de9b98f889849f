# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
NightWatch Structured Logging

One JSON object per line on stderr. Every entry carries timestamp, level,
component and message plus the emitting module, function and line; run
details (method, frames, seconds, fps) travel in `extra_fields` and are
flattened into the entry. stdout is never written, it belongs to command
output.
"""

import json
import logging
import logging.config
import os
import sys
from datetime import datetime, timezone
from typing import Any, Dict, Mapping, MutableMapping, Optional, Tuple

import yaml

ROOT_LOGGER = "nightwatch"


class StructuredFormatter(logging.Formatter):
    """Formats a record as a single JSON line."""

    def __init__(self, component: str = ROOT_LOGGER):
        super().__init__()
        self.component = component

    def format(self, record: logging.LogRecord) -> str:
        entry: Dict[str, Any] = {
            "timestamp": datetime.fromtimestamp(record.created, timezone.utc).isoformat(),
            "level": record.levelname,
            "component": self.component,
            "message": record.getMessage(),
            "module": record.module,
            "function": record.funcName,
            "line": record.lineno,
        }
        if record.exc_info:
            entry["exception"] = self.formatException(record.exc_info)
        entry.update(getattr(record, "extra_fields", None) or {})
        # numpy scalars and paths end up here
        return json.dumps(entry, default=str)


class FieldsAdapter(logging.LoggerAdapter):
    """
    Logger that stamps a fixed set of fields on every entry.

    Fields given per call through extra={'extra_fields': {...}} win over the
    bound ones.
    """

    def process(self, msg: Any, kwargs: MutableMapping[str, Any]) -> Tuple[Any, MutableMapping[str, Any]]:
        extra = dict(kwargs.get("extra") or {})
        extra["extra_fields"] = {**self.extra, **(extra.get("extra_fields") or {})}
        kwargs["extra"] = extra
        return msg, kwargs


def _stderr_handler(component: str, level: int) -> logging.Handler:
    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(level)
    handler.setFormatter(StructuredFormatter(component))
    return handler


def get_logger(name: str, component: str = ROOT_LOGGER, level: int = logging.INFO) -> logging.Logger:
    """
    Structured logger for a NightWatch module.

    The first call attaches a stderr handler and stops propagation; later
    calls with the same name return the same logger untouched.

    Example:
        >>> logger = get_logger(__name__, component="bench")
        >>> logger.info("Timed CLAHE", extra={'extra_fields': {'fps': 165.2}})
    """
    logger = logging.getLogger(name)
    if not logger.handlers:
        logger.setLevel(level)
        logger.addHandler(_stderr_handler(component, level))
        logger.propagate = False
    return logger


def bind(logger: logging.Logger, **fields: Any) -> FieldsAdapter:
    """Adapter writing `fields` into every entry, e.g. bind(logger, method="CLAHE")."""
    return FieldsAdapter(logger, fields)


def set_level(level: int) -> None:
    """Apply a level to every NightWatch logger created so far, handlers included."""
    for name, logger in list(logging.Logger.manager.loggerDict.items()):
        if not isinstance(logger, logging.Logger):
            continue
        if name == ROOT_LOGGER or name.startswith(ROOT_LOGGER + "."):
            logger.setLevel(level)
            for handler in logger.handlers:
                handler.setLevel(level)


def _read_logging_config(config_path: str) -> Optional[Mapping[str, Any]]:
    with open(config_path, "r", encoding="utf-8") as handle:
        config = yaml.safe_load(handle)
    return config if isinstance(config, dict) and config else None


def _create_log_directories(config: Mapping[str, Any]) -> None:
    for handler in (config.get("handlers") or {}).values():
        filename = handler.get("filename")
        if filename:
            os.makedirs(os.path.dirname(filename) or ".", exist_ok=True)


def configure_logging(config_path: Optional[str] = None, default_level: int = logging.INFO) -> bool:
    """
    Configure logging from a YAML dictConfig file.

    A missing, empty or unusable file falls back to basicConfig on stderr.

    Returns:
        True if the YAML configuration was applied, False otherwise
    """
    if config_path and os.path.isfile(config_path):
        try:
            config = _read_logging_config(config_path)
            if config is not None:
                _create_log_directories(config)
                logging.config.dictConfig(dict(config))
                return True
        except (OSError, ValueError, TypeError, AttributeError, ImportError, yaml.YAMLError):
            pass
    logging.basicConfig(level=default_level, stream=sys.stderr)
    return False
