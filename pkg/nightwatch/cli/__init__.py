# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
NightWatch Command Line Module

Argument parsing, run configuration and the subcommands behind the
`nightwatch` executable.
"""

from .commands import COMMANDS, parse_ingest
from .config import RunConfig, parse_bool, parse_size
from .parser import ENHANCE_METHODS, build_parser

__all__ = [
    'COMMANDS',
    'ENHANCE_METHODS',
    'RunConfig',
    'build_parser',
    'parse_bool',
    'parse_ingest',
    'parse_size',
]
