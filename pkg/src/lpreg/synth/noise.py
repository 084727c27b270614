"""Gaussian measurement noise."""

from __future__ import annotations

import math

import msgspec
import numpy as np

from lpreg.core.exceptions import InvalidInputError


class NoiseSpec(msgspec.Struct, frozen=True):
    """I.i.d. Gaussian noise.

    Attributes:
        sigma: Standard deviation per measurement component.
        seed: Seed of the per-call generator.
    """

    sigma: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if not (self.sigma >= 0 and math.isfinite(self.sigma)):
            raise InvalidInputError(f"sigma must be finite and non-negative, got {self.sigma}")


def add_noise(y: np.ndarray, spec: NoiseSpec) -> np.ndarray:
    """Return ``y + ε`` with ``ε ~ N(0, sigma²)`` drawn from ``spec.seed``."""
    y = np.asarray(y, dtype=np.float64)
    if not np.all(np.isfinite(y)):
        raise InvalidInputError("Measurement vector must be finite")
    if spec.sigma == 0:
        return y.copy()
    rng = np.random.default_rng(spec.seed)
    return y + spec.sigma * rng.standard_normal(y.shape)


def snr_report(clean: np.ndarray, sigma: float) -> float:
    """Signal-to-noise ratio in dB, ``10 log10(mean(y²) / sigma²)``.

    Reported for reference only; experiments take sigma directly.
    """
    if sigma == 0:
        return math.inf
    power = float(np.mean(np.square(clean)))
    return 10.0 * math.log10(power / sigma**2)
