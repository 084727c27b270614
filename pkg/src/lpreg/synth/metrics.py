"""Reconstruction error metrics."""

from __future__ import annotations

import msgspec
import numpy as np

from lpreg.core.exceptions import DimensionError
from lpreg.operators.signal import Signal


class ErrorReport(msgspec.Struct, frozen=True, eq=False):
    """Errors of a reconstruction against the truth.

    Attributes:
        l1: Sum of pointwise errors.
        l2: Euclidean norm of pointwise errors.
        rel_l1: ``l1`` divided by the ℓ1 norm of the truth.
        rel_l2: ``l2`` divided by the ℓ2 norm of the truth.
        pointwise: ``|û_i - u_i|``, shaped like the signal.
    """

    l1: float
    l2: float
    rel_l1: float
    rel_l2: float
    pointwise: np.ndarray

    def summary(self) -> dict[str, float]:
        """Scalar fields only (for JSON)."""
        return {"l1": self.l1, "l2": self.l2, "rel_l1": self.rel_l1, "rel_l2": self.rel_l2}


class Improvement(msgspec.Struct, frozen=True):
    """Relative error reduction ``(e_base - e_new) / e_base`` per norm."""

    l1: float
    l2: float


def _values(u: Signal | np.ndarray) -> np.ndarray:
    return u.values if isinstance(u, Signal) else np.asarray(u, dtype=np.float64)


def _safe_ratio(num: float, den: float) -> float:
    return num / den if den > 0 else (0.0 if num == 0 else float("inf"))


def error_metrics(u_hat: Signal | np.ndarray, u_true: Signal | np.ndarray) -> ErrorReport:
    """Pointwise, ℓ1 and ℓ2 errors of ``u_hat`` against ``u_true``.

    Raises:
        DimensionError: If the shapes differ.
    """
    est = _values(u_hat)
    ref = _values(u_true)
    if est.shape != ref.shape:
        raise DimensionError(
            f"Shape mismatch: estimate {est.shape} vs truth {ref.shape}",
            details={"estimate": est.shape, "truth": ref.shape},
        )
    pointwise = np.abs(est - ref)
    l1 = float(pointwise.sum())
    l2 = float(np.linalg.norm(pointwise.ravel()))
    return ErrorReport(
        l1=l1,
        l2=l2,
        rel_l1=_safe_ratio(l1, float(np.abs(ref).sum())),
        rel_l2=_safe_ratio(l2, float(np.linalg.norm(ref.ravel()))),
        pointwise=pointwise,
    )


def improvement(base: ErrorReport, new: ErrorReport) -> Improvement:
    """Fractional improvement of ``new`` over ``base`` (0.1 means 10%)."""
    return Improvement(
        l1=_safe_ratio(base.l1 - new.l1, base.l1),
        l2=_safe_ratio(base.l2 - new.l2, base.l2),
    )


def pointwise_comparison(first: ErrorReport, second: ErrorReport) -> np.ndarray:
    """``first.pointwise - second.pointwise``; negative where ``first`` is closer."""
    if first.pointwise.shape != second.pointwise.shape:
        raise DimensionError("Pointwise maps have different shapes")
    return first.pointwise - second.pointwise
