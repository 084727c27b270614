"""Logging setup for lpreg."""

from __future__ import annotations

import logging
import sys

_FORMAT = "%(asctime)s %(levelname)-7s %(name)s: %(message)s"


def configure_logging(level: str | int = "info") -> logging.Logger:
    """Attach a single stderr handler to the package logger.

    Repeated calls only adjust the level.

    Args:
        level: Level name (case-insensitive) or numeric level.

    Returns:
        The ``lpreg`` logger.
    """
    logger = logging.getLogger("lpreg")
    if isinstance(level, str):
        level = logging.getLevelNamesMapping().get(level.upper(), logging.INFO)
    logger.setLevel(level)
    if not any(getattr(h, "_lpreg", False) for h in logger.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(_FORMAT))
        handler._lpreg = True  # type: ignore[attr-defined]
        logger.addHandler(handler)
    return logger
