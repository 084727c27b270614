"""Non-overlapping patch cover of a signal grid.

Patches tile the signal row-major in steps of K; the last patch along an
axis is truncated when K does not divide the axis length. In 2D, patch
``(pr, pc)`` has index ``pr * cols_p + pc``.
"""

from __future__ import annotations

import math

import msgspec
import numpy as np

from lpreg.core.exceptions import DimensionError, InvalidSizeError
from lpreg.operators.signal import Shape, component_count, normalize_shape


class PatchGrid(msgspec.Struct, frozen=True, eq=False):
    """Patch cover of a 1D or 2D signal.

    Attributes:
        shape: Signal shape.
        size: Patch edge K.
        layout: Number of patches per axis, ``(M,)`` or ``(rows_p, cols_p)``.
        labels: Patch index of every component, flat row-major (length N).
    """

    shape: Shape
    size: int
    layout: tuple[int, ...]
    labels: np.ndarray

    @property
    def count(self) -> int:
        """Number of patches M."""
        return math.prod(self.layout)

    def sizes(self) -> np.ndarray:
        """Component count of each patch."""
        return np.bincount(self.labels, minlength=self.count)

    def patches(self) -> list[np.ndarray]:
        """Flat component indices of each patch, in patch order."""
        order = np.argsort(self.labels, kind="stable")
        bounds = np.cumsum(self.sizes())[:-1]
        return np.split(order, bounds)

    def patch_of(self, index: int | tuple[int, int]) -> int:
        """Patch containing a component given by flat index or ``(row, col)``."""
        if isinstance(index, tuple):
            index = int(np.ravel_multi_index(index, self.shape))
        return int(self.labels[index])

    def values_grid(self, values: np.ndarray) -> np.ndarray:
        """Per-patch values reshaped to the patch layout."""
        values = np.asarray(values)
        if values.shape != (self.count,):
            raise DimensionError(
                f"Expected {self.count} patch values, got {values.shape}",
                details={"expected": self.count, "actual": values.shape},
            )
        return values.reshape(self.layout)


def build_patch_grid(shape: int | Shape, size: int) -> PatchGrid:
    """Tile ``shape`` with K-sized (K×K in 2D) patches.

    Raises:
        InvalidSizeError: If ``size < 1`` or ``size`` exceeds a dimension.
    """
    shape = normalize_shape(shape)
    if size < 1 or any(size > d for d in shape):
        raise InvalidSizeError(
            f"Patch size {size} must be between 1 and the smallest dimension of {shape}",
            details={"size": size, "shape": shape},
        )
    if len(shape) == 1:
        labels = np.arange(shape[0]) // size
        layout: tuple[int, ...] = (math.ceil(shape[0] / size),)
    else:
        rows, cols = shape
        layout = (math.ceil(rows / size), math.ceil(cols / size))
        pr = np.arange(rows)[:, None] // size
        pc = np.arange(cols)[None, :] // size
        labels = (pr * layout[1] + pc).reshape(-1)
    labels.flags.writeable = False
    return PatchGrid(shape=shape, size=size, layout=layout, labels=labels)


def expand_patch_values(values: np.ndarray, grid: PatchGrid) -> np.ndarray:
    """Broadcast one value per patch to every component (signal-shaped)."""
    values = np.asarray(values)
    if values.shape != (grid.count,):
        raise DimensionError(
            f"Expected {grid.count} patch values, got {values.shape}",
            details={"expected": grid.count, "actual": values.shape},
        )
    return values[grid.labels].reshape(grid.shape)


def check_component_values(values: np.ndarray, grid: PatchGrid) -> np.ndarray:
    """Flatten per-component values and check they cover the grid."""
    flat = np.asarray(values, dtype=np.float64).reshape(-1)
    n = component_count(grid.shape)
    if flat.size != n:
        raise DimensionError(
            f"Expected {n} per-component values, got {flat.size}",
            details={"expected": n, "actual": flat.size},
        )
    return flat
