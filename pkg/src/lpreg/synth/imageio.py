"""Binary PGM (P5) images and full-precision CSV arrays.

CSV files start with a ``# shape=...`` comment line and store one matrix row
per line (1D arrays: one value per line) with ``%.17g`` formatting, which
round-trips float64 exactly.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Literal

import numpy as np

from lpreg.core.exceptions import ImageIOError, InvalidSizeError
from lpreg.operators.signal import Signal, normalize_shape

_TOKEN = re.compile(rb"\s*(?:#[^\n]*\n\s*)*(\S+)")


def _read_header(data: bytes) -> tuple[list[bytes], int]:
    tokens: list[bytes] = []
    pos = 0
    while len(tokens) < 4:
        match = _TOKEN.match(data, pos)
        if match is None:
            raise ImageIOError("Truncated PGM header")
        tokens.append(match.group(1))
        pos = match.end()
    # exactly one whitespace byte separates the header from the raster
    return tokens, pos + 1


def load_image(path: Path | str) -> Signal:
    """Read an 8- or 16-bit binary PGM as a 2D signal with values in [0, 255].

    Raises:
        ImageIOError: If the file is missing or not a well-formed P5 image.
    """
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as e:
        raise ImageIOError(f"Cannot read image {path}: {e}") from e

    try:
        tokens, offset = _read_header(data)
        magic = tokens[0]
        width, height, maxval = (int(t) for t in tokens[1:])
    except (ValueError, ImageIOError) as e:
        raise ImageIOError(f"Malformed PGM header in {path}") from e
    if magic != b"P5":
        raise ImageIOError(f"Unsupported image format {magic!r} in {path}; expected P5")
    if width < 1 or height < 1 or not 0 < maxval < 65536:
        raise ImageIOError(f"Invalid PGM dimensions in {path}")

    dtype = np.dtype(np.uint8) if maxval < 256 else np.dtype(">u2")
    count = width * height
    available = max(len(data) - offset, 0) // dtype.itemsize
    if available < count:
        raise ImageIOError(
            f"PGM raster in {path} is truncated",
            details={"expected": count, "actual": available},
        )
    raster = np.frombuffer(data, dtype=dtype, count=count, offset=offset)
    values = raster.reshape(height, width).astype(np.float64)
    if maxval != 255:
        values *= 255.0 / maxval
    return Signal.of(values)


def save_image(
    path: Path | str,
    signal: Signal | np.ndarray,
    scale: Literal["none", "minmax"] = "none",
) -> Path:
    """Write an 8-bit binary PGM.

    Args:
        path: Output file.
        signal: 1D (written as one row) or 2D data.
        scale: ``none`` rounds and clips values to 0..255 (exact for images
            read with :func:`load_image`); ``minmax`` maps [min, max] linearly
            onto 0..255 for visualization.

    Returns:
        The written path.
    """
    path = Path(path)
    values = signal.values if isinstance(signal, Signal) else np.asarray(signal, dtype=np.float64)
    if values.ndim == 1:
        values = values.reshape(1, -1)
    if scale == "minmax":
        lo, hi = float(values.min()), float(values.max())
        values = (values - lo) * (255.0 / (hi - lo)) if hi > lo else np.zeros_like(values)
    pixels = np.clip(np.rint(values), 0, 255).astype(np.uint8)
    height, width = pixels.shape
    header = f"P5\n{width} {height}\n255\n".encode("ascii")
    try:
        path.write_bytes(header + pixels.tobytes())
    except OSError as e:
        raise ImageIOError(f"Cannot write image {path}: {e}") from e
    return path


def downsample_image(signal: Signal, size: int) -> Signal:
    """Block-average a 2D signal to ``size×size``.

    Raises:
        InvalidSizeError: If the signal is not 2D or its sides are not
            multiples of ``size``.
    """
    if signal.ndim != 2:
        raise InvalidSizeError("Only 2D signals can be downsampled")
    rows, cols = signal.shape
    if size < 1 or rows % size or cols % size:
        raise InvalidSizeError(
            f"Image of shape {signal.shape} cannot be block-averaged to {size}×{size}",
            details={"shape": signal.shape, "size": size},
        )
    blocks = signal.values.reshape(size, rows // size, size, cols // size)
    return Signal.of(blocks.mean(axis=(1, 3)))


def save_array(path: Path | str, values: Signal | np.ndarray) -> Path:
    """Write a 1D or 2D float array as CSV with a shape header."""
    path = Path(path)
    arr = values.values if isinstance(values, Signal) else np.asarray(values, dtype=np.float64)
    if arr.ndim not in (1, 2):
        raise InvalidSizeError(f"Only 1D or 2D arrays can be saved, got {arr.ndim}D")
    header = "shape=" + ",".join(str(d) for d in arr.shape)
    rows = arr.reshape(-1, 1) if arr.ndim == 1 else arr
    try:
        np.savetxt(path, rows, fmt="%.17g", delimiter=",", header=header)
    except OSError as e:
        raise ImageIOError(f"Cannot write array {path}: {e}") from e
    return path


def load_array(path: Path | str) -> np.ndarray:
    """Read a CSV written by :func:`save_array`, restoring its shape."""
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as f:
            first = f.readline()
        data = np.loadtxt(path, delimiter=",", comments="#", ndmin=2)
    except (OSError, ValueError) as e:
        raise ImageIOError(f"Cannot read array {path}: {e}") from e
    match = re.match(r"#\s*shape=([\d,]+)", first)
    if match is None:
        raise ImageIOError(f"Missing shape header in {path}")
    shape = normalize_shape(tuple(int(d) for d in match.group(1).split(",")))
    if data.size != np.prod(shape):
        raise ImageIOError(
            f"Array {path} holds {data.size} values, header says {shape}",
            details={"shape": shape, "size": int(data.size)},
        )
    return data.reshape(shape)
