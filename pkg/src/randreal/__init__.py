"""Executable randomised realisability over an oracle-machine program model."""

from __future__ import annotations

import sys

# generated programs and their codes nest deeply; the default limit is too tight
if sys.getrecursionlimit() < 20000:
    sys.setrecursionlimit(20000)

__version__ = "0.1.0"
