"""Mean gradients of the TV and Tikhonov sample reconstructions."""

from __future__ import annotations

from collections.abc import Sequence

import msgspec
import numpy as np

from lpreg.core.exceptions import DimensionError, InvalidInputError
from lpreg.operators.gradient import grad
from lpreg.operators.signal import GradientField, Signal, pixel_norms


class GradientStats(msgspec.Struct, frozen=True, eq=False):
    """Mean gradients ``g1`` (TV samples) and ``g2`` (Tikhonov samples).

    Attributes:
        g1: Mean gradient field of the p=1 samples.
        g2: Mean gradient field of the p=2 samples.
        mag1: Per-pixel magnitude of ``g1``, signal-shaped.
        mag2: Per-pixel magnitude of ``g2``, signal-shaped.
    """

    g1: GradientField
    g2: GradientField
    mag1: np.ndarray
    mag2: np.ndarray

    def pooling_inputs(self) -> tuple[np.ndarray, np.ndarray]:
        """Per-pixel values fed to pooling: signed differences in 1D, magnitudes in 2D."""
        if len(self.g1.shape) == 1:
            return self.g1.values, self.g2.values
        return self.mag1.reshape(-1), self.mag2.reshape(-1)


def _mean_gradient(samples: Sequence[Signal], label: str) -> GradientField:
    if not samples:
        raise InvalidInputError(f"No {label} samples given")
    shape = samples[0].shape
    if any(s.shape != shape for s in samples):
        raise DimensionError(f"{label} samples have different shapes")
    stack = np.stack([grad(s.values, shape) for s in samples])
    # summing sorted columns makes the mean independent of sample order
    stack.sort(axis=0)
    return GradientField(values=stack.sum(axis=0) / len(samples), shape=shape)


def gradient_stats(samples_tv: Sequence[Signal], samples_tik: Sequence[Signal]) -> GradientStats:
    """Average the gradients of each sample list.

    Raises:
        InvalidInputError: If a list is empty.
        DimensionError: If the samples do not share one shape.
    """
    g1 = _mean_gradient(samples_tv, "TV")
    g2 = _mean_gradient(samples_tik, "Tikhonov")
    if g1.shape != g2.shape:
        raise DimensionError("TV and Tikhonov samples have different shapes")
    return GradientStats(
        g1=g1,
        g2=g2,
        mag1=pixel_norms(g1.values, g1.shape).reshape(g1.shape),
        mag2=pixel_norms(g2.values, g2.shape).reshape(g2.shape),
    )
