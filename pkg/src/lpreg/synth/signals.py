"""Synthetic ground-truth signals.

Both generators sample on uniform grids of ``[-1, 1]`` that include the two
endpoints; the 2D grid uses the same nodes along x (columns) and y (rows).
"""

from __future__ import annotations

import numpy as np

from lpreg.core.exceptions import InvalidSizeError
from lpreg.operators.signal import Signal


def grid(n: int) -> np.ndarray:
    """``n`` uniform nodes on ``[-1, 1]``, endpoints included."""
    if n < 2:
        raise InvalidSizeError(f"Grid needs at least 2 points, got {n}", details={"n": n})
    return np.linspace(-1.0, 1.0, n)


def plateau_chirp(x: np.ndarray | float) -> np.ndarray:
    """Piecewise test profile: a plateau on [-0.7, -0.3] and a modulated sine on (0, 1]."""
    x = np.asarray(x, dtype=np.float64)
    wave = 0.5 * (1.0 + np.sin(100.0 * (x + 1.0))) * np.exp(-25.0 * (x - 0.5) ** 2)
    plateau = (x >= -0.7) & (x <= -0.3)
    return np.where(plateau, 1.0, np.where((x > 0.0) & (x <= 1.0), wave, 0.0))


def ring_profile(r: np.ndarray | float) -> np.ndarray:
    """Radial test profile: oscillating core, ramp, flat annulus, slow outer wave."""
    r = np.asarray(r, dtype=np.float64)
    outer = np.where(r <= 13.0 / 18.0, -1.0, np.cos(36.0 / 13.0 * np.pi * r))
    ramp = np.where(r <= 5.0 / 9.0, -18.0 * (r - 4.0 / 9.0) + 1.0, outer)
    return np.where(r <= 4.0 / 9.0, np.cos(18.0 * np.pi * r), ramp)


def make_signal_1d(n: int = 200) -> Signal:
    """Sample :func:`plateau_chirp` on ``n`` nodes of ``[-1, 1]``."""
    return Signal.of(plateau_chirp(grid(n)))


def make_signal_2d(n: int = 128) -> Signal:
    """Sample :func:`ring_profile` on the ``n×n`` grid of ``[-1, 1]²``."""
    x = grid(n)
    xx, yy = np.meshgrid(x, x)
    return Signal.of(ring_profile(np.hypot(xx, yy)))
