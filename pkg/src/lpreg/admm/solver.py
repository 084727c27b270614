"""ADMM for ``min_u ‖Au - y‖² + λ Σ_i ‖(Du)_i‖^{p_i}``.

Splitting ``Fu = v`` with scaled dual ``w``:

    u ← argmin ½‖Au - y‖² + (ρ/2)‖Fu - (v - w)‖²
    v ← prox of (λ/2ρ) Σ |·|^{p_i} at Fu + w
    w ← w + Fu - v

The u-step works with half the fidelity term, so the v-step prox parameter
is ``2ρ/λ``; the fixed point then minimizes the objective above.
"""

from __future__ import annotations

import logging
import math

import numpy as np

from lpreg.admm.normal import NormalSolver
from lpreg.admm.prox import block_prox
from lpreg.admm.state import ADMMState, ExponentField, ReconstructionResult
from lpreg.core.config import SolverConfig
from lpreg.core.exceptions import DimensionError, InvalidInputError
from lpreg.numerics.roots import DEFAULT_ROOT_CONFIG, RootConfig
from lpreg.operators.gradient import grad, grad_adjoint
from lpreg.operators.measurement import MeasurementOperator
from lpreg.operators.signal import Signal, as_array, gradient_length, pixel_norms

logger = logging.getLogger(__name__)


def _exponents(p: ExponentField | np.ndarray | float, op: MeasurementOperator) -> np.ndarray:
    if isinstance(p, ExponentField):
        if p.shape != op.signal_shape:
            raise DimensionError(
                f"Exponent field shape {p.shape} does not match signal shape {op.signal_shape}"
            )
        return p.per_component
    if np.ndim(p) == 0:
        return ExponentField.uniform(op.signal_shape, float(p)).per_component
    return ExponentField.of(p, op.signal_shape).per_component


def objective(
    op: MeasurementOperator,
    y: np.ndarray,
    u: Signal | np.ndarray,
    p: ExponentField | np.ndarray | float,
    lam: float,
) -> float:
    """``‖Au - y‖² + λ Σ_i ‖(Du)_i‖^{p_i}``."""
    shape = op.signal_shape
    arr = as_array(u, shape)
    residual = op.forward(arr) - np.asarray(y, dtype=np.float64)
    norms = pixel_norms(grad(arr, shape), shape)
    return float(residual @ residual + lam * np.sum(np.power(norms, _exponents(p, op))))


def admm_solve(
    op: MeasurementOperator,
    y: np.ndarray,
    p: ExponentField | np.ndarray | float,
    cfg: SolverConfig,
    init: ADMMState | None = None,
    solver: NormalSolver | None = None,
    root_cfg: RootConfig = DEFAULT_ROOT_CONFIG,
) -> ReconstructionResult:
    """Reconstruct ``u`` from ``y`` with exponents ``p`` and weight ``cfg.lam``.

    Stops when ``‖Fu - v‖ <= tol_primal·√M`` and
    ``ρ‖v^{k+1} - v^k‖ <= tol_dual·√M`` or after ``cfg.max_iter`` steps;
    running out of iterations is reported through ``converged``.

    Args:
        op: Measurement operator.
        y: Measurements (length m).
        p: Exponent field, per-component array or a single exponent.
        cfg: ADMM parameters.
        init: Warm-start iterates; zeros by default.
        solver: Factorization of the normal matrix for ``(op, cfg.penalty)``;
            built when omitted. Pass one to share it across λ values.
        root_cfg: Stopping rules of the prox root-finder.

    Returns:
        Reconstruction with its iterates and convergence history.
    """
    shape = op.signal_shape
    y = np.asarray(y, dtype=np.float64)
    exponents = _exponents(p, op)
    rho = cfg.penalty
    if solver is None:
        solver = NormalSolver(op, rho)
    elif solver.operator is not op or solver.rho != rho:
        raise InvalidInputError("Solver was factored for a different operator or rho")

    state = init if init is not None else ADMMState.zeros(shape)
    state.check(shape)
    u = state.u.reshape(shape).copy()
    v = state.v.copy()
    w = state.w.copy()

    kappa = 2.0 * rho / cfg.lam
    scale = math.sqrt(gradient_length(shape))
    aty = op.adjoint(y)

    objectives: list[float] = []
    primals: list[float] = []
    duals: list[float] = []
    converged = False
    primal = dual = 0.0
    k = 0
    for k in range(1, cfg.max_iter + 1):
        u = solver.solve(aty + rho * grad_adjoint(v - w, shape))
        fu = grad(u, shape)
        v_next = block_prox(fu + w, shape, exponents, kappa, root_cfg)
        w = w + fu - v_next
        primal = float(np.linalg.norm(fu - v_next))
        dual = float(rho * np.linalg.norm(v_next - v))
        v = v_next

        objectives.append(objective(op, y, u, exponents, cfg.lam))
        primals.append(primal)
        duals.append(dual)
        if primal <= cfg.tol_primal * scale and dual <= cfg.tol_dual * scale:
            converged = True
            break

    if converged:
        logger.debug(
            "ADMM converged: lambda=%g iterations=%d primal=%.3e dual=%.3e",
            cfg.lam,
            k,
            primal,
            dual,
        )
    else:
        logger.warning(
            "ADMM stopped at max_iter=%d without converging: lambda=%g primal=%.3e dual=%.3e",
            cfg.max_iter,
            cfg.lam,
            primal,
            dual,
        )

    return ReconstructionResult(
        u_hat=Signal.of(u),
        lam=cfg.lam,
        iterations=k,
        converged=converged,
        state=ADMMState(u=u, v=v, w=w, k=state.k + k, primal_res=primal, dual_res=dual),
        objective=np.array(objectives),
        primal=np.array(primals),
        dual=np.array(duals),
    )
