"""Frequency selection rules and plain-text mask files.

Mask files hold one frequency index per line (1D) or one ``k_x,k_y`` pair
per line (2D). Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Literal

import numpy as np

from lpreg.core.exceptions import ImageIOError, InvalidInputError, SelectionError
from lpreg.operators.signal import Shape, normalize_shape

Axis = Literal["x", "y"]


def _product_selection(shape: Shape, picked: np.ndarray, axis: Axis) -> np.ndarray:
    if len(shape) == 1:
        return picked
    rows, cols = shape
    if axis == "x":
        ky = np.arange(rows)
        return np.array([(kx, k) for kx in picked for k in ky], dtype=np.int64)
    kx = np.arange(cols)
    return np.array([(k, ky) for ky in picked for k in kx], dtype=np.int64)


def _axis_length(shape: Shape, axis: Axis) -> int:
    if len(shape) == 1:
        return shape[0]
    if axis not in ("x", "y"):
        raise InvalidInputError(f"axis must be 'x' or 'y', got {axis!r}")
    return shape[1] if axis == "x" else shape[0]


def lowest_frequencies(shape: int | Shape, fraction: float, axis: Axis = "x") -> np.ndarray:
    """First ``ceil(fraction·n)`` wavenumbers ``0, 1, ...`` along ``axis``.

    In 2D every wavenumber of the other axis is kept, so the selection has
    product form.

    Args:
        shape: Signal shape.
        fraction: Share of the axis to keep, in (0, 1].
        axis: ``"x"`` (columns) or ``"y"`` (rows); ignored in 1D.

    Returns:
        Selection array: ``(S,)`` in 1D, ``(S, 2)`` pairs ``(k_x, k_y)`` in 2D.
    """
    shape = normalize_shape(shape)
    if not 0.0 < fraction <= 1.0:
        raise InvalidInputError(f"fraction must lie in (0, 1], got {fraction}")
    n = _axis_length(shape, axis)
    # slack absorbs products such as 0.7·10 = 7.000000000000001
    count = max(1, math.ceil(fraction * n - 1e-9))
    return _product_selection(shape, np.arange(count, dtype=np.int64), axis)


def strided_frequencies(shape: int | Shape, stride: int, axis: Axis = "x") -> np.ndarray:
    """Every ``stride``-th wavenumber ``0, s, 2s, ...`` along ``axis``."""
    shape = normalize_shape(shape)
    if stride < 1:
        raise InvalidInputError(f"stride must be at least 1, got {stride}")
    n = _axis_length(shape, axis)
    return _product_selection(shape, np.arange(0, n, stride, dtype=np.int64), axis)


def load_mask(path: Path | str, shape: int | Shape) -> np.ndarray:
    """Read a mask file written for signals of ``shape``.

    Raises:
        ImageIOError: If the file cannot be read.
        SelectionError: If a line does not hold the expected integers.
    """
    shape = normalize_shape(shape)
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ImageIOError(f"Cannot read mask file {path}: {e}") from e

    width = len(shape)
    entries: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != width:
            raise SelectionError(
                f"{path}:{lineno}: expected {width} value(s), got {line!r}",
                details={"line": lineno},
            )
        try:
            entries.append(tuple(int(p) for p in parts))
        except ValueError as e:
            raise SelectionError(f"{path}:{lineno}: not an integer: {line!r}") from e

    sel = np.array(entries, dtype=np.int64)
    return sel.reshape(-1) if width == 1 else sel.reshape(-1, 2)


def save_mask(path: Path | str, selection: np.ndarray) -> Path:
    """Write a selection in mask-file format, preserving order."""
    path = Path(path)
    sel = np.asarray(selection, dtype=np.int64)
    if sel.ndim == 1:
        lines = [str(int(k)) for k in sel]
    else:
        lines = [f"{int(kx)},{int(ky)}" for kx, ky in sel]
    try:
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    except OSError as e:
        raise ImageIOError(f"Cannot write mask file {path}: {e}") from e
    return path
