"""Random λ schedules for the multiple homogeneous reconstructions."""

from __future__ import annotations

import math

import numpy as np

from lpreg.core.config import DesignHyper
from lpreg.core.exceptions import InvalidInputError


def draw_interval(hyper: DesignHyper, rng: np.random.Generator) -> tuple[float, float]:
    """Draw ``[λ_a, λ_b]`` inside ``[lambda_lo, lambda_hi]``.

    ``log10(λ_b / λ_a)`` is uniform on ``[log10 ratio_lo, log10 ratio_hi]``;
    given that length, ``log10 λ_a`` is uniform on the positions that keep the
    interval inside the bounds.
    """
    lo, hi = math.log10(hyper.lambda_lo), math.log10(hyper.lambda_hi)
    length = rng.uniform(math.log10(hyper.ratio_lo), math.log10(hyper.ratio_hi))
    start = rng.uniform(lo, hi - length)
    return 10.0**start, 10.0 ** (start + length)


def log_spaced(lam_a: float, lam_b: float, count: int) -> list[float]:
    """``count`` logarithmically equispaced values from ``lam_a`` to ``lam_b``."""
    if not 0 < lam_a <= lam_b:
        raise InvalidInputError(f"Invalid λ interval [{lam_a}, {lam_b}]")
    if count < 1:
        raise InvalidInputError(f"count must be positive, got {count}")
    values = np.logspace(math.log10(lam_a), math.log10(lam_b), count)
    # pin the endpoints against round-off in 10**log10
    values[0] = lam_a
    values[-1] = lam_b
    return [float(v) for v in values]


def lambda_schedule(hyper: DesignHyper, rng: np.random.Generator | None = None) -> list[float]:
    """Draw an interval and return ``hyper.samples`` log-spaced λ values on it.

    Args:
        hyper: Design hyperparameters.
        rng: Random source; a generator seeded with ``hyper.seed`` when omitted.
    """
    rng = rng if rng is not None else np.random.default_rng(hyper.seed)
    lam_a, lam_b = draw_interval(hyper, rng)
    return log_spaced(lam_a, lam_b, hyper.samples)
