# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

__version__ = "0.1.0"
