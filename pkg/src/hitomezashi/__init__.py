"""Hitomezashi patterns: loops, extremal census, long stitches and multigrids."""

from __future__ import annotations

__version__ = "0.1.0"
