# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

"""
NightWatch Main Entry Point

Parses the command line, prepares the requested subcommand and runs it.
Diagnostics go to stderr as structured JSON; stdout carries command output
only (JSON lines when no --out file is given).

Exit codes:
    0  success (and --help / --version)
    1  runtime failure
    2  invalid arguments, configuration or inputs
"""

import logging
from typing import List, Optional

import yaml

from . import __version__
from .cli.commands import COMMANDS
from .cli.parser import build_parser
from .logging.logger import configure_logging, get_logger, set_level

logger = get_logger(__name__, component="cli")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (None, 0) else EXIT_USAGE

    if args.log_config:
        configure_logging(args.log_config)
    set_level(getattr(logging, args.log_level or "INFO"))
    logger.debug(f"NightWatch v{__version__} running '{args.command}'")

    try:
        job = COMMANDS[args.command](args)
    except (ValueError, FileNotFoundError, yaml.YAMLError) as e:
        logger.error(f"{args.command}: {e}")
        return EXIT_USAGE

    try:
        job()
    except Exception as e:
        logger.error(f"{args.command} failed: {e}", exc_info=True)
        return EXIT_FAILURE
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
