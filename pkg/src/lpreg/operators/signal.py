"""Signal and gradient-field records.

A :class:`Signal` is a real 1D vector or a row-major 2D grid. Columns run
along x and rows along y, so a 2D signal ``u[r, c]`` is sampled at
``(x_c, y_r)``. A :class:`GradientField` stores the forward differences of a
signal as one flat vector: the N x-differences first and, for 2D signals,
the N y-differences after them.
"""

from __future__ import annotations

import math

import msgspec
import numpy as np

from lpreg.core.exceptions import DimensionError, InvalidInputError

Shape = tuple[int] | tuple[int, int]


def normalize_shape(shape: int | tuple[int, ...] | list[int]) -> Shape:
    """Coerce ``shape`` to a 1- or 2-tuple of positive ints."""
    if isinstance(shape, int | np.integer):
        shape = (int(shape),)
    dims = tuple(int(d) for d in shape)
    if len(dims) not in (1, 2) or any(d < 1 for d in dims):
        raise DimensionError(
            f"Signal shape must have 1 or 2 positive dimensions, got {shape}",
            details={"shape": dims},
        )
    return dims  # type: ignore[return-value]


def component_count(shape: Shape) -> int:
    """Number of signal components N."""
    return math.prod(shape)


def gradient_length(shape: Shape) -> int:
    """Length M of a gradient field: N in 1D, 2N in 2D."""
    return len(shape) * component_count(shape)


class Signal(msgspec.Struct, frozen=True, eq=False):
    """Real-valued 1D or 2D signal.

    Attributes:
        values: Read-only float64 array whose shape is the signal shape.
    """

    values: np.ndarray

    def __post_init__(self) -> None:
        values = self.values
        if not isinstance(values, np.ndarray) or values.dtype != np.float64:
            raise InvalidInputError("Signal values must be a float64 ndarray; use Signal.of()")
        if values.ndim not in (1, 2) or values.size == 0:
            raise DimensionError(
                f"Signal must be a non-empty 1D or 2D array, got shape {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise InvalidInputError("Signal values must be finite")
        values.flags.writeable = False

    @classmethod
    def of(cls, values: object, shape: int | tuple[int, ...] | None = None) -> Signal:
        """Build a signal from array-like data, copying it.

        Args:
            values: Array-like data.
            shape: Optional target shape; ``values`` is reshaped row-major.

        Returns:
            New Signal owning a private copy of the data.
        """
        arr = np.array(values, dtype=np.float64, copy=True)
        if shape is not None:
            target = normalize_shape(shape)
            if arr.size != component_count(target):
                raise DimensionError(
                    f"Cannot reshape {arr.size} values to shape {target}",
                    details={"size": arr.size, "shape": target},
                )
            arr = arr.reshape(target)
        return cls(values=arr)

    @property
    def shape(self) -> Shape:
        return self.values.shape  # type: ignore[return-value]

    @property
    def size(self) -> int:
        return self.values.size

    @property
    def ndim(self) -> int:
        return self.values.ndim

    def flat(self) -> np.ndarray:
        """Row-major view of the values."""
        return self.values.reshape(-1)


class GradientField(msgspec.Struct, frozen=True, eq=False):
    """Forward differences of a signal, stacked x then y.

    Attributes:
        values: Flat float64 array of length M.
        shape: Shape of the source signal.
    """

    values: np.ndarray
    shape: Shape

    def __post_init__(self) -> None:
        expected = gradient_length(self.shape)
        if self.values.ndim != 1 or self.values.size != expected:
            raise DimensionError(
                f"Gradient field for shape {self.shape} needs {expected} entries, "
                f"got {self.values.size}",
                details={"expected": expected, "actual": int(self.values.size)},
            )

    def blocks(self) -> np.ndarray:
        """Per-pixel gradient vectors, shape ``(N, 1)`` in 1D or ``(N, 2)`` in 2D."""
        n = component_count(self.shape)
        return self.values.reshape(len(self.shape), n).T

    def magnitude(self) -> np.ndarray:
        """Per-pixel Euclidean norm, shaped like the source signal."""
        return pixel_norms(self.values, self.shape).reshape(self.shape)


def pixel_norms(values: np.ndarray, shape: Shape) -> np.ndarray:
    """Per-pixel norms of a flat stacked gradient vector (length N)."""
    n = component_count(shape)
    if len(shape) == 1:
        return np.abs(values)
    return np.hypot(values[:n], values[n:])


def as_array(u: Signal | np.ndarray, shape: Shape) -> np.ndarray:
    """Return ``u`` as a float array with the given signal shape.

    Accepts a :class:`Signal`, an array with the signal shape, or a flat
    row-major array of N entries.

    Raises:
        DimensionError: If the sizes disagree.
    """
    arr = u.values if isinstance(u, Signal) else np.asarray(u, dtype=np.float64)
    if arr.shape == shape:
        return arr
    if arr.ndim == 1 and arr.size == component_count(shape):
        return arr.reshape(shape)
    raise DimensionError(
        f"Expected a signal of shape {shape}, got {arr.shape}",
        details={"expected": shape, "actual": arr.shape},
    )
