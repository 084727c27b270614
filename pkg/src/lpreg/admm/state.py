"""Records shared by the ADMM solver: exponents, iterates and results."""

from __future__ import annotations

from pathlib import Path

import msgspec
import numpy as np

from lpreg.core.exceptions import DimensionError, ImageIOError, InvalidInputError
from lpreg.operators.signal import Shape, Signal, component_count, gradient_length, normalize_shape


class ExponentField(msgspec.Struct, frozen=True, eq=False):
    """Per-component exponents ``p_i ∈ [1, 2]``.

    Attributes:
        per_component: Flat float64 array of length N (row-major).
        shape: Shape of the signal the exponents apply to.
    """

    per_component: np.ndarray
    shape: Shape

    def __post_init__(self) -> None:
        p = self.per_component
        n = component_count(self.shape)
        if p.ndim != 1 or p.size != n:
            raise DimensionError(
                f"Exponent field for shape {self.shape} needs {n} entries, got {p.shape}",
                details={"expected": n, "actual": p.shape},
            )
        if not (np.all(np.isfinite(p)) and np.all(p >= 1.0) and np.all(p <= 2.0)):
            raise InvalidInputError("Exponents must lie in [1, 2]")
        p.flags.writeable = False

    @classmethod
    def of(cls, values: object, shape: int | tuple[int, ...]) -> ExponentField:
        """Build from array-like data (flat or signal-shaped), copying it."""
        shape = normalize_shape(shape)
        arr = np.array(values, dtype=np.float64, copy=True).reshape(-1)
        return cls(per_component=arr, shape=shape)

    @classmethod
    def uniform(cls, shape: int | tuple[int, ...], p: float) -> ExponentField:
        """Homogeneous exponent ``p`` everywhere."""
        shape = normalize_shape(shape)
        return cls(per_component=np.full(component_count(shape), float(p)), shape=shape)

    def grid(self) -> np.ndarray:
        """Exponents reshaped like the signal."""
        return self.per_component.reshape(self.shape)

    def is_uniform(self) -> bool:
        return bool(np.all(self.per_component == self.per_component[0]))


class ADMMState(msgspec.Struct, frozen=True, eq=False):
    """ADMM iterates after ``k`` steps.

    Attributes:
        u: Signal-shaped primal iterate.
        v: Split variable, flat length M.
        w: Scaled dual variable, flat length M.
        k: Iterations performed.
        primal_res: ``‖Fu - v‖₂`` at the last step.
        dual_res: ``ρ‖v^k - v^{k-1}‖₂`` at the last step.
    """

    u: np.ndarray
    v: np.ndarray
    w: np.ndarray
    k: int = 0
    primal_res: float = 0.0
    dual_res: float = 0.0

    @classmethod
    def zeros(cls, shape: Shape) -> ADMMState:
        m = gradient_length(shape)
        return cls(u=np.zeros(shape), v=np.zeros(m), w=np.zeros(m))

    def check(self, shape: Shape) -> None:
        """Raise DimensionError unless the iterates fit signals of ``shape``."""
        m = gradient_length(shape)
        if self.u.size != component_count(shape) or self.v.size != m or self.w.size != m:
            raise DimensionError(
                f"ADMM state does not match signal shape {shape}",
                details={"u": self.u.shape, "v": self.v.shape, "w": self.w.shape},
            )
        if self.primal_res < 0 or self.dual_res < 0:
            raise InvalidInputError("Residuals must be non-negative")


_HISTORY_HEADER = "iteration,objective,primal_residual,dual_residual"


class ReconstructionResult(msgspec.Struct, frozen=True, eq=False):
    """Output of :func:`lpreg.admm.admm_solve`.

    Attributes:
        u_hat: Reconstructed signal.
        lam: Regularization weight used.
        iterations: Iterations performed.
        converged: Whether both residual tests passed before ``max_iter``.
        state: Final iterates, usable as a warm start.
        objective: Objective value after each iteration.
        primal: Primal residual after each iteration.
        dual: Dual residual after each iteration.
    """

    u_hat: Signal
    lam: float
    iterations: int
    converged: bool
    state: ADMMState
    objective: np.ndarray
    primal: np.ndarray
    dual: np.ndarray

    def history_rows(self) -> list[tuple[int, float, float, float]]:
        """``(iteration, objective, primal, dual)`` per iteration, 1-based."""
        return [
            (i + 1, float(o), float(p), float(d))
            for i, (o, p, d) in enumerate(zip(self.objective, self.primal, self.dual))
        ]

    def write_history(self, path: Path | str) -> Path:
        """Write the convergence history as CSV."""
        path = Path(path)
        table = np.column_stack(
            [np.arange(1, self.iterations + 1), self.objective, self.primal, self.dual]
        )
        try:
            np.savetxt(
                path,
                table,
                fmt=["%d", "%.17g", "%.17g", "%.17g"],
                delimiter=",",
                header=_HISTORY_HEADER,
                comments="",
            )
        except OSError as e:
            raise ImageIOError(f"Cannot write history {path}: {e}") from e
        return path
