"""Factorized normal matrix of the u-update.

The u-update solves ``(AᵀA + ρFᵀF) u = Aᵀy + ρFᵀx`` once per ADMM
iteration. :class:`NormalSolver` factors the matrix once and is reused for
every iteration and every λ sharing the same operator and ρ.

Two strategies:

* ``dense``: Cholesky of the assembled N×N matrix, for N up to
  ``dense_limit``.
* ``banded``: banded Cholesky of the sparse matrix after a row- or
  column-major ordering of the unknowns, for operators with a sparse Gram
  matrix (identity, product-form Fourier selections).

When the operator does not see constants (a Fourier selection without the DC
term), both AᵀA and FᵀF annihilate them and the matrix is singular. With
``allow_nullspace`` the result is that of the matrix plus the projector
``11ᵀ/N`` onto constants: the solver pins one unknown, solves on the
complement and returns the zero-mean solution plus the mean of the
right-hand side.
"""

from __future__ import annotations

import logging
from typing import Literal

import numpy as np
import scipy.linalg as la
import scipy.sparse as sp

from lpreg.core.config import get_config
from lpreg.core.exceptions import DimensionError, InvalidInputError, SingularSystemError
from lpreg.operators.gradient import grad_adjoint, gradient_matrix
from lpreg.operators.measurement import MeasurementOperator
from lpreg.operators.signal import GradientField, Shape

logger = logging.getLogger(__name__)

Strategy = Literal["dense", "banded"]

PIVOT_RATIO = 1e-12
CONSTANT_TOLERANCE = 1e-10

_DC_ADVICE = (
    "constant signals are invisible to the measurement operator; "
    "use a frequency mask that measures the DC component (k = 0)"
)


def _bandwidth(matrix: sp.coo_matrix) -> int:
    if matrix.nnz == 0:
        return 0
    return int(np.max(np.abs(matrix.row - matrix.col)))


def _to_upper_banded(matrix: sp.spmatrix, bandwidth: int) -> np.ndarray:
    """Upper banded storage ``ab[u + i - j, j] = a[i, j]`` used by LAPACK."""
    coo = sp.triu(matrix).tocoo()
    ab = np.zeros((bandwidth + 1, matrix.shape[0]))
    ab[bandwidth + coo.row - coo.col, coo.col] = coo.data
    return ab


class NormalSolver:
    """Cholesky factorization of ``AᵀA + ρFᵀF``, immutable after construction.

    Args:
        op: Measurement operator.
        rho: ADMM penalty ρ.
        dense_limit: Largest N factored densely; defaults to the application
            setting.
        allow_nullspace: Accept operators that miss constants (see module
            docstring) instead of raising.

    Raises:
        SingularSystemError: If the matrix is singular or its smallest
            Cholesky pivot falls below ``1e-12`` times the largest.
        DimensionError: If N exceeds ``dense_limit`` and the operator has no
            sparse Gram matrix.
    """

    def __init__(
        self,
        op: MeasurementOperator,
        rho: float,
        dense_limit: int | None = None,
        allow_nullspace: bool = False,
    ) -> None:
        if not rho > 0:
            raise InvalidInputError(f"rho must be positive, got {rho}")
        self._op = op
        self._rho = float(rho)
        self._shape = op.signal_shape
        limit = get_config().dense_limit if dense_limit is None else dense_limit

        self._constant_unobserved = op.constant_response() <= CONSTANT_TOLERANCE
        if self._constant_unobserved and not allow_nullspace:
            raise SingularSystemError(f"Normal matrix is singular: {_DC_ADVICE}")

        n = op.n
        laplacian = (gradient_matrix(self._shape).T @ gradient_matrix(self._shape)).tocsr()
        if n <= limit:
            self._strategy: Strategy = "dense"
            matrix = op.gram_dense() + self._rho * laplacian.toarray()
            self._perm = np.arange(n)
            self._pin_and_factor_dense(matrix)
        else:
            gram = op.gram_sparse()
            if gram is None:
                raise DimensionError(
                    f"N={n} exceeds the dense size limit {limit} and {op!r} has no sparse "
                    "normal matrix; use a product-form frequency mask or raise dense_limit",
                    details={"n": n, "dense_limit": limit},
                )
            self._strategy = "banded"
            self._factor_banded((gram + self._rho * laplacian).tocsr())

        logger.debug(
            "Factored %s normal matrix: N=%d rho=%g constant_unobserved=%s",
            self._strategy,
            n,
            self._rho,
            self._constant_unobserved,
        )

    @property
    def strategy(self) -> Strategy:
        return self._strategy

    @property
    def rho(self) -> float:
        return self._rho

    @property
    def operator(self) -> MeasurementOperator:
        return self._op

    @property
    def signal_shape(self) -> Shape:
        return self._shape

    @property
    def constant_unobserved(self) -> bool:
        """True when constants lie in the nullspace and the solver pins them."""
        return self._constant_unobserved

    def _pin(self, diagonal: np.ndarray) -> float:
        return float(np.max(diagonal)) if self._constant_unobserved else 0.0

    def _check_pivots(self, pivots: np.ndarray) -> None:
        smallest, largest = float(np.min(pivots)), float(np.max(pivots))
        if not smallest >= PIVOT_RATIO * largest:
            raise SingularSystemError(
                f"Normal matrix is nearly singular (pivot ratio {smallest / largest:.3g}); "
                f"{_DC_ADVICE}",
                details={"min_pivot": smallest, "max_pivot": largest},
            )

    def _pin_and_factor_dense(self, matrix: np.ndarray) -> None:
        matrix[0, 0] += self._pin(np.diag(matrix))
        try:
            self._factor = la.cho_factor(matrix, lower=False, check_finite=False)
        except la.LinAlgError as e:
            raise SingularSystemError(f"Normal matrix is not positive definite: {_DC_ADVICE}") from e
        self._check_pivots(np.diag(self._factor[0]) ** 2)

    def _factor_banded(self, matrix: sp.csr_matrix) -> None:
        rows = self._shape[0]
        cols = self._shape[1] if len(self._shape) == 2 else 1
        row_major = np.arange(matrix.shape[0])
        col_major = row_major.reshape(rows, cols).T.reshape(-1)

        best: tuple[int, np.ndarray, sp.coo_matrix] | None = None
        for perm in (row_major, col_major):
            permuted = matrix[perm][:, perm].tocoo()
            width = _bandwidth(permuted)
            if best is None or width < best[0]:
                best = (width, perm, permuted)
        width, self._perm, permuted = best

        ab = _to_upper_banded(permuted, width)
        ab[width, 0] += self._pin(ab[width])
        try:
            self._factor_ab = la.cholesky_banded(ab, lower=False, check_finite=False)
        except la.LinAlgError as e:
            raise SingularSystemError(f"Normal matrix is not positive definite: {_DC_ADVICE}") from e
        self._check_pivots(self._factor_ab[width] ** 2)
        logger.debug("Banded ordering with bandwidth %d", width)

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        """Solve the normal equations for a flat or signal-shaped right-hand side.

        Returns:
            Signal-shaped solution.
        """
        r = np.asarray(rhs, dtype=np.float64).reshape(-1)
        if r.size != self._op.n:
            raise DimensionError(
                f"Right-hand side needs {self._op.n} entries, got {r.size}",
                details={"expected": self._op.n, "actual": r.size},
            )
        mean = 0.0
        if self._constant_unobserved:
            mean = float(r.mean())
            r = r - mean

        permuted = r[self._perm]
        if self._strategy == "dense":
            z = la.cho_solve(self._factor, permuted, check_finite=False)
        else:
            z = la.cho_solve_banded((self._factor_ab, False), permuted, check_finite=False)
        u = np.empty_like(z)
        u[self._perm] = z

        if self._constant_unobserved:
            u = u - u.mean() + mean
        return u.reshape(self._shape)


def u_update(
    op: MeasurementOperator,
    y: np.ndarray,
    rho: float,
    rhs_field: GradientField,
    solver: NormalSolver | None = None,
    allow_nullspace: bool = False,
) -> np.ndarray:
    """Exact minimizer of ``½‖Au - y‖² + (ρ/2)‖Fu - x‖²`` for ``x = rhs_field``.

    Args:
        op: Measurement operator.
        y: Measurement vector of length m.
        rho: Penalty ρ.
        rhs_field: Target field ``x``.
        solver: Factorization to reuse; built on demand.
        allow_nullspace: Passed to a solver built on demand.

    Returns:
        Signal-shaped solution.
    """
    if solver is None:
        solver = NormalSolver(op, rho, allow_nullspace=allow_nullspace)
    elif solver.rho != rho or solver.operator is not op:
        raise InvalidInputError("Solver was factored for a different operator or rho")
    rhs = op.adjoint(y) + rho * grad_adjoint(rhs_field.values, rhs_field.shape)
    return solver.solve(rhs)
