"""Per-patch statistics of gradient magnitudes and the directional filter."""

from __future__ import annotations

from typing import Literal

import msgspec
import numpy as np

from lpreg.core.exceptions import InvalidInputError
from lpreg.exponent.patches import PatchGrid, check_component_values

PoolKind = Literal["variance", "average", "normalized", "filtered"]
NghdMode = Literal["joint", "per-side"]


class PoolingMap(msgspec.Struct, frozen=True, eq=False):
    """One value per patch.

    Attributes:
        values: Length-M float array in patch order.
        kind: Statistic the values hold.
    """

    values: np.ndarray
    kind: PoolKind

    def __post_init__(self) -> None:
        if self.values.ndim != 1:
            raise InvalidInputError("Pooling map values must be one-dimensional")


def _patch_mean(values: np.ndarray, grid: PatchGrid) -> np.ndarray:
    return np.bincount(grid.labels, weights=values, minlength=grid.count) / grid.sizes()


def variance_pool(g: np.ndarray, grid: PatchGrid) -> PoolingMap:
    """``mean(g²) - mean(|g|)²`` per patch.

    Magnitudes are first shifted by the first value of their patch, so a
    constant patch is exactly zero before the mean squared deviation is taken.
    """
    mag = np.abs(check_component_values(g, grid))
    _, first = np.unique(grid.labels, return_index=True)
    shifted = mag - mag[first][grid.labels]
    centered = shifted - _patch_mean(shifted, grid)[grid.labels]
    return PoolingMap(values=_patch_mean(centered * centered, grid), kind="variance")


def average_pool(g: np.ndarray, grid: PatchGrid) -> PoolingMap:
    """``mean(|g|)`` per patch."""
    mag = np.abs(check_component_values(g, grid))
    return PoolingMap(values=_patch_mean(mag, grid), kind="average")


def minmax_normalize(pmap: PoolingMap) -> PoolingMap:
    """Rescale to ``[0, 1]``; a constant map becomes all zeros."""
    lo = float(np.min(pmap.values))
    hi = float(np.max(pmap.values))
    if hi > lo:
        values = np.clip((pmap.values - lo) / (hi - lo), 0.0, 1.0)
    else:
        values = np.zeros_like(pmap.values)
    return PoolingMap(values=values, kind="normalized")


def _directions(ndim: int, n: int, mode: NghdMode) -> list[list[tuple[int, ...]]]:
    steps = range(1, n + 1)
    if ndim == 1:
        left = [(-k,) for k in steps]
        right = [(k,) for k in steps]
        return [left + right] if mode == "joint" else [left, right]
    axes = [(0, 1), (1, 0), (1, 1), (1, -1)]
    return [[(s * k * dr, s * k * dc) for k in steps for s in (-1, 1)] for dr, dc in axes]


def nghd_filter(
    vmap: PoolingMap,
    grid: PatchGrid,
    n: int,
    mode: NghdMode = "joint",
) -> PoolingMap:
    """Minimum over directions of the maximum neighbor value within reach ``n``.

    The center patch is excluded and out-of-domain neighbors are dropped. In
    1D the ``joint`` mode takes one maximum over both sides; ``per-side``
    takes the smaller of the left and right maxima. In 2D the directions are
    horizontal, vertical and the two diagonals. Directions without any
    neighbor are skipped; a patch with no neighbor at all gets 0.

    Raises:
        InvalidInputError: If ``n < 1``.
        DimensionError: If the map does not fit the grid.
    """
    if n < 1:
        raise InvalidInputError(f"Neighborhood size must be at least 1, got {n}")
    values = grid.values_grid(vmap.values).astype(np.float64)
    padded = np.pad(values, n, constant_values=-np.inf)
    core = tuple(slice(n, n + d) for d in values.shape)

    result = np.full(values.shape, np.inf)
    for direction in _directions(values.ndim, n, mode):
        best = np.full(values.shape, -np.inf)
        for offset in direction:
            window = tuple(slice(s.start + o, s.stop + o) for s, o in zip(core, offset))
            best = np.maximum(best, padded[window])
        result = np.minimum(result, np.where(np.isneginf(best), np.inf, best))
    result = np.where(np.isposinf(result), 0.0, result)
    return PoolingMap(values=result.reshape(-1), kind="filtered")
