# Copyright (C) 2026 sobolev-extender contributors
# SPDX-License-Identifier: MIT

VERSION: str = "0.1.0"
