"""Independent ADMM solves over a list of λ values."""

from __future__ import annotations

import logging
import os
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor

import msgspec
import numpy as np

from lpreg.admm.normal import NormalSolver
from lpreg.admm.solver import admm_solve
from lpreg.admm.state import ExponentField, ReconstructionResult
from lpreg.core.config import SolverConfig, get_config
from lpreg.core.exceptions import InvalidInputError, LpRegError, StageError
from lpreg.operators.measurement import MeasurementOperator
from lpreg.operators.signal import Signal

logger = logging.getLogger(__name__)


def resolve_workers(workers: int | None) -> int:
    """Worker count: explicit value, else the application setting; 0 means all CPUs."""
    count = get_config().workers if workers is None else workers
    if count < 0:
        raise InvalidInputError(f"workers must be non-negative, got {count}")
    return count or os.cpu_count() or 1


def _solver_for(
    op: MeasurementOperator, cfg: SolverConfig, shared: NormalSolver | None
) -> NormalSolver:
    if shared is not None and shared.operator is op and shared.rho == cfg.penalty:
        return shared
    return NormalSolver(op, cfg.penalty)


def solve_lambdas(
    op: MeasurementOperator,
    y: np.ndarray,
    lambdas: Sequence[float],
    p: ExponentField | float,
    cfg: SolverConfig,
    solver: NormalSolver | None = None,
    workers: int | None = None,
    stage: str = "solve",
) -> list[ReconstructionResult]:
    """Run :func:`admm_solve` once per λ, in λ order.

    With a fixed penalty the solves share one factorization; with
    ``rho_mode="lambda"`` each λ is factored on its own. Solves run on a
    thread pool and are independent, so results match a serial run exactly.

    Raises:
        InvalidInputError: If ``lambdas`` is empty.
        StageError: If a solve fails; ``details`` names the stage and λ.
    """
    if len(lambdas) == 0:
        raise InvalidInputError("λ list must not be empty")
    if cfg.rho_mode == "fixed":
        solver = _solver_for(op, cfg, solver)

    def solve_one(lam: float) -> ReconstructionResult:
        local = msgspec.structs.replace(cfg, lam=float(lam))
        try:
            return admm_solve(op, y, p, local, solver=_solver_for(op, local, solver))
        except LpRegError as e:
            raise StageError(
                f"{stage}: solve failed at lambda={lam:g}: {e.message}",
                details={"stage": stage, "lambda": float(lam)},
            ) from e

    count = min(resolve_workers(workers), len(lambdas))
    logger.info("%s: %d solve(s) on %d worker(s)", stage, len(lambdas), count)
    if count <= 1:
        return [solve_one(lam) for lam in lambdas]
    with ThreadPoolExecutor(max_workers=count) as pool:
        return list(pool.map(solve_one, lambdas))


def sample_solves(
    op: MeasurementOperator,
    y: np.ndarray,
    schedule: Sequence[float],
    p_hom: float,
    cfg: SolverConfig,
    solver: NormalSolver | None = None,
    workers: int | None = None,
) -> list[ReconstructionResult]:
    """Homogeneous solves (``p_hom`` is 1 or 2) for every λ of the schedule.

    Solves that stop at ``max_iter`` are kept and logged together.
    """
    if p_hom not in (1, 2):
        raise InvalidInputError(f"Sample exponent must be 1 or 2, got {p_hom}")
    stage = f"samples p={p_hom:g}"
    results = solve_lambdas(op, y, schedule, float(p_hom), cfg, solver, workers, stage=stage)
    stalled = [r.lam for r in results if not r.converged]
    if stalled:
        logger.warning(
            "%s: %d of %d solves did not converge (lambda %.3g to %.3g)",
            stage,
            len(stalled),
            len(results),
            min(stalled),
            max(stalled),
        )
    return results


def reconstruct_samples(
    op: MeasurementOperator,
    y: np.ndarray,
    schedule: Sequence[float],
    p_hom: float,
    cfg: SolverConfig,
    solver: NormalSolver | None = None,
    workers: int | None = None,
) -> list[Signal]:
    """Homogeneous reconstructions (``p_hom`` is 1 or 2) for every λ of the schedule."""
    return [r.u_hat for r in sample_solves(op, y, schedule, p_hom, cfg, solver, workers)]
