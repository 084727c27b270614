"""Utility functions for lpreg."""

from lpreg.utils.helpers import ensure_dir

__all__ = ["ensure_dir"]
