"""Filesystem helpers for lpreg."""

from __future__ import annotations

from pathlib import Path

from lpreg.core.exceptions import ImageIOError


def ensure_dir(path: Path | str) -> Path:
    """Create an artifact directory (and its parents) if it is missing.

    Raises:
        ImageIOError: If ``path`` exists as a file or cannot be created.
    """
    path = Path(path)
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise ImageIOError(f"Cannot create output directory {path}: {e}") from e
    return path
