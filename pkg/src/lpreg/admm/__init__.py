"""ADMM solver for inhomogeneous lp-regularized least squares."""

from lpreg.admm.normal import NormalSolver, u_update
from lpreg.admm.prox import block_prox, h_residual, prox_norms, prox_scalar, shrink, v_update
from lpreg.admm.solver import admm_solve, objective
from lpreg.admm.state import ADMMState, ExponentField, ReconstructionResult

__all__ = [
    "ExponentField",
    "ADMMState",
    "ReconstructionResult",
    "NormalSolver",
    "u_update",
    "shrink",
    "h_residual",
    "prox_scalar",
    "prox_norms",
    "block_prox",
    "v_update",
    "objective",
    "admm_solve",
]
