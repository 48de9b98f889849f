# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
Tests for Logging and Metrics

Tests the structured formatter, logger setup and Prometheus counters.
"""

import json
import logging
import sys
from pathlib import Path

from prometheus_client import REGISTRY

from nightwatch.logging import StructuredFormatter, bind, configure_logging, get_logger, set_level
from nightwatch.monitoring import track_detections, track_frame_latency, track_frames

LOGGING_CONFIG = Path(__file__).resolve().parent.parent / "config" / "logging.yaml"


def _record(msg, **extra):
    record = logging.LogRecord("nightwatch.test", logging.INFO, __file__, 10, msg, None, None)
    for key, value in extra.items():
        setattr(record, key, value)
    return record


def test_formatter_emits_json_with_component():
    """Test the structured entry layout"""
    entry = json.loads(StructuredFormatter("bench").format(_record("Timed Gamma")))
    assert entry["component"] == "bench"
    assert entry["level"] == "INFO"
    assert entry["message"] == "Timed Gamma"
    assert "timestamp" in entry


def test_formatter_merges_extra_fields():
    """Test that extra_fields are flattened into the entry"""
    record = _record("Timed", extra_fields={"fps": 165.2, "method": "CLAHE"})
    entry = json.loads(StructuredFormatter().format(record))
    assert entry["fps"] == 165.2
    assert entry["method"] == "CLAHE"


def test_formatter_includes_exception():
    """Test that exception text is attached"""
    try:
        raise RuntimeError("boom")
    except RuntimeError:
        record = _record("failed", exc_info=sys.exc_info())
    entry = json.loads(StructuredFormatter().format(record))
    assert "RuntimeError: boom" in entry["exception"]


def test_bind_merges_fields():
    """Test that bound fields reach the entry and per-call fields win"""
    adapter = bind(get_logger("nightwatch.test.bind"), method="CLAHE", frames=10)
    msg, kwargs = adapter.process("Timed", {"extra": {"extra_fields": {"frames": 12}}})
    assert msg == "Timed"
    assert kwargs["extra"]["extra_fields"] == {"method": "CLAHE", "frames": 12}

    record = _record("Timed", **kwargs["extra"])
    entry = json.loads(StructuredFormatter().format(record))
    assert (entry["method"], entry["frames"]) == ("CLAHE", 12)


def test_get_logger_writes_to_stderr_once():
    """Test that repeated calls do not stack handlers"""
    first = get_logger("nightwatch.test.once", component="test")
    second = get_logger("nightwatch.test.once", component="test")
    assert first is second
    assert len(first.handlers) == 1
    assert first.handlers[0].stream is sys.stderr
    assert first.propagate is False


def test_set_level_applies_to_nightwatch_loggers():
    """Test that set_level reaches existing loggers and their handlers"""
    logger = get_logger("nightwatch.test.level")
    set_level(logging.WARNING)
    try:
        assert logger.level == logging.WARNING
        assert logger.handlers[0].level == logging.WARNING
    finally:
        set_level(logging.INFO)


def test_configure_logging_missing_file(temp_dir):
    """Test the fallback when no config file exists"""
    assert configure_logging(str(temp_dir / "absent.yaml")) is False


def test_configure_logging_from_yaml(temp_dir, monkeypatch):
    """Test that the shipped logging configuration loads"""
    monkeypatch.chdir(temp_dir)
    root = logging.getLogger()
    saved = list(root.handlers)
    try:
        assert configure_logging(str(LOGGING_CONFIG)) is True
        assert (temp_dir / "logs").is_dir()
        assert logging.getLogger("nightwatch").handlers
    finally:
        for handler in logging.getLogger("nightwatch").handlers:
            handler.close()
        logging.getLogger("nightwatch").handlers.clear()
        root.handlers[:] = saved


def test_metrics_counters_increase():
    """Test frame, latency and detection metrics"""
    labels = {"method": "metrics-test"}
    before = REGISTRY.get_sample_value("nightwatch_frames_processed_total", labels) or 0.0
    track_frames("metrics-test", 12)
    assert REGISTRY.get_sample_value("nightwatch_frames_processed_total", labels) == before + 12

    track_frame_latency("metrics-test", 0.004)
    assert REGISTRY.get_sample_value("nightwatch_frame_latency_seconds_count", labels) >= 1

    track_detections("metrics-test", 3)
    assert REGISTRY.get_sample_value("nightwatch_detections_total", labels) >= 3
