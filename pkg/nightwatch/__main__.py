# Copyright (C) 2025 TENKEI
# SPDX-License-Identifier: AGPL-3.0-or-later
#
# This file is part of NightWatch.
# See the LICENSE file in the project root for license information.

import sys

from nightwatch.main import main

sys.exit(main())
