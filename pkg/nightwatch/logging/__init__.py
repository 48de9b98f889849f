# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
NightWatch Logging Module

Provides structured JSON logging.
"""

from .logger import FieldsAdapter, StructuredFormatter, bind, configure_logging, get_logger, set_level

__all__ = ['FieldsAdapter', 'StructuredFormatter', 'bind', 'configure_logging', 'get_logger', 'set_level']
