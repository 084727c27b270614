"""Tests for the ADMM solver."""

from __future__ import annotations

import logging

import msgspec
import numpy as np
import pytest
from scipy.optimize import minimize

from lpreg.admm import ADMMState, ExponentField, NormalSolver, admm_solve, objective
from lpreg.core.config import SolverConfig
from lpreg.core.exceptions import DimensionError, InvalidInputError
from lpreg.operators import gradient_matrix, make_dense, make_identity, make_partial_fourier
from lpreg.synth import make_signal_1d

TIGHT = SolverConfig(rho=1.0, lam=1.0, max_iter=20_000, tol_primal=1e-10, tol_dual=1e-10)


def _brute_force(matrix: np.ndarray, y: np.ndarray, p: np.ndarray, lam: float) -> np.ndarray:
    """Grid search on [-2, 2]³ followed by Nelder-Mead refinement."""

    def energy(u: np.ndarray) -> np.ndarray:
        u = np.atleast_2d(u)
        residual = u @ matrix.T - y
        diffs = np.abs(np.diff(u, axis=1))
        return np.sum(residual**2, axis=1) + lam * np.sum(diffs ** p[:-1], axis=1)

    axis = np.arange(-2.0, 2.0 + 1e-9, 0.05)
    mesh = np.stack(np.meshgrid(axis, axis, axis, indexing="ij"), axis=-1).reshape(-1, 3)
    start = mesh[int(np.argmin(energy(mesh)))]
    best = minimize(
        lambda u: float(energy(u)[0]),
        start,
        method="Nelder-Mead",
        options={"xatol": 1e-9, "fatol": 1e-14, "maxiter": 20_000, "maxfev": 40_000},
    )
    return best.x


class TestADMMSolve:
    """Tests for admm_solve."""

    def test_zero_measurements(self, fourier_1d):
        """y = 0 gives u = 0 for any exponents."""
        p = ExponentField.of(np.linspace(1.0, 2.0, fourier_1d.n), fourier_1d.signal_shape)
        result = admm_solve(fourier_1d, np.zeros(fourier_1d.m), p, SolverConfig(lam=0.3))
        np.testing.assert_allclose(result.u_hat.values, 0.0, atol=1e-12)
        assert result.converged

    def test_identity_total_variation(self):
        """N=3 identity with p=1 and λ=0.5 matches the brute-force minimizer."""
        y = np.array([0.2, 1.0, -0.4])
        result = admm_solve(make_identity(3), y, 1.0, msgspec.structs.replace(TIGHT, lam=0.5))
        expected = _brute_force(np.eye(3), y, np.ones(3), 0.5)
        np.testing.assert_allclose(result.u_hat.values, expected, atol=5e-3)

    def test_brute_force_instances(self, rng):
        """Random N=3 problems with mixed exponents match the brute-force oracle."""
        for trial in range(20):
            matrix = np.eye(3) if trial % 2 == 0 else np.eye(3) + 0.3 * rng.standard_normal((3, 3))
            op = make_identity(3) if trial % 2 == 0 else make_dense(3, matrix)
            y = rng.uniform(-1.0, 1.0, 3)
            p = rng.choice([1.0, 1.5, 2.0], size=3)
            lam = 0.1 if trial < 10 else 1.0
            cfg = SolverConfig(rho=1.0, lam=lam, max_iter=20_000, tol_primal=1e-10, tol_dual=1e-10)
            result = admm_solve(op, y, p, cfg)
            expected = _brute_force(matrix, y, p, lam)
            np.testing.assert_allclose(result.u_hat.values, expected, atol=5e-3)

    def test_tikhonov_equivalence(self):
        """Homogeneous p=2 reproduces the direct Tikhonov solve."""
        truth = make_signal_1d(200)
        op = make_partial_fourier(200, np.arange(40))
        y = op.forward(truth)
        lam = 1.0
        laplacian = (gradient_matrix((200,)).T @ gradient_matrix((200,))).toarray()
        direct = np.linalg.solve(op.gram_dense() + lam * laplacian, op.adjoint(y))
        result = admm_solve(op, y, 2.0, TIGHT)
        assert result.converged
        gap = np.linalg.norm(result.u_hat.values - direct)
        assert gap <= 1e-6 * np.linalg.norm(direct)
        normal_residual = (op.gram_dense() + lam * laplacian) @ result.u_hat.values - op.adjoint(y)
        assert np.linalg.norm(normal_residual) <= 1e-6 * np.linalg.norm(op.adjoint(y))

    def test_objective_below_zero_guess(self, rng, fourier_1d):
        """The solution is never worse than u = 0."""
        y = rng.standard_normal(fourier_1d.m)
        p = ExponentField.of(rng.uniform(1.0, 2.0, fourier_1d.n), fourier_1d.signal_shape)
        result = admm_solve(fourier_1d, y, p, SolverConfig(lam=0.5))
        at_zero = objective(fourier_1d, y, np.zeros(fourier_1d.n), p, 0.5)
        assert objective(fourier_1d, y, result.u_hat, p, 0.5) <= at_zero + 1e-9

    def test_primal_residual_converges_2d(self, fourier_2d, rng):
        """2D problems reach the stopping tolerance."""
        y = fourier_2d.forward(rng.standard_normal(fourier_2d.signal_shape))
        cfg = SolverConfig(lam=0.2, max_iter=5000, tol_primal=1e-5, tol_dual=1e-5)
        result = admm_solve(fourier_2d, y, 1.3, cfg)
        assert result.converged
        assert result.primal[-1] <= 1e-5 * np.sqrt(2 * fourier_2d.n)

    def test_shared_solver(self, rng, fourier_1d):
        """Passing a factorization gives the same result as building one."""
        y = rng.standard_normal(fourier_1d.m)
        cfg = SolverConfig(lam=0.4)
        solver = NormalSolver(fourier_1d, cfg.rho)
        first = admm_solve(fourier_1d, y, 1.5, cfg, solver=solver)
        second = admm_solve(fourier_1d, y, 1.5, cfg)
        np.testing.assert_array_equal(first.u_hat.values, second.u_hat.values)

    def test_solver_mismatch(self, fourier_1d):
        """A factorization for another operator is rejected."""
        other = make_partial_fourier(16, [0, 1])
        with pytest.raises(InvalidInputError):
            admm_solve(fourier_1d, np.zeros(fourier_1d.m), 1.0, SolverConfig(), solver=NormalSolver(other, 1.0))

    def test_exponent_shape_mismatch(self, fourier_1d):
        """Exponent fields must match the operator."""
        with pytest.raises(DimensionError):
            admm_solve(fourier_1d, np.zeros(fourier_1d.m), ExponentField.uniform(8, 1.0), SolverConfig())

    def test_warm_start(self, rng, fourier_1d):
        """Restarting from the final state keeps the solution."""
        y = rng.standard_normal(fourier_1d.m)
        cfg = SolverConfig(lam=0.4, tol_primal=1e-9, tol_dual=1e-9, max_iter=20_000)
        first = admm_solve(fourier_1d, y, 1.0, cfg)
        second = admm_solve(fourier_1d, y, 1.0, cfg, init=first.state)
        assert first.converged
        assert second.iterations < first.iterations
        assert second.state.k == first.state.k + second.iterations
        np.testing.assert_allclose(second.u_hat.values, first.u_hat.values, atol=1e-8)

    def test_bad_warm_start(self, fourier_1d):
        """Warm starts must fit the signal."""
        with pytest.raises(DimensionError):
            admm_solve(fourier_1d, np.zeros(fourier_1d.m), 1.0, SolverConfig(), init=ADMMState.zeros((4,)))

    def test_max_iter_reported(self, rng, fourier_1d, caplog):
        """Exhausting the budget is reported, not raised."""
        y = rng.standard_normal(fourier_1d.m)
        with caplog.at_level(logging.WARNING, logger="lpreg"):
            result = admm_solve(fourier_1d, y, 1.0, SolverConfig(lam=0.5, max_iter=2))
        assert not result.converged
        assert result.iterations == 2
        assert "without converging" in caplog.text


class TestHistory:
    """Tests for convergence diagnostics."""

    def test_history_rows_and_csv(self, rng, fourier_1d, temp_dir):
        """One row per iteration with a fixed header."""
        y = rng.standard_normal(fourier_1d.m)
        result = admm_solve(fourier_1d, y, 1.2, SolverConfig(lam=0.5, max_iter=25))
        rows = result.history_rows()
        assert len(rows) == result.iterations
        assert rows[0][0] == 1
        lines = result.write_history(temp_dir / "history.csv").read_text().splitlines()
        assert lines[0] == "iteration,objective,primal_residual,dual_residual"
        assert len(lines) == result.iterations + 1
        assert float(lines[1].split(",")[1]) == rows[0][1]


class TestExponentField:
    """Tests for ExponentField validation."""

    def test_range(self):
        """Exponents outside [1, 2] are rejected."""
        with pytest.raises(InvalidInputError):
            ExponentField.of([1.0, 2.5], 2)
        with pytest.raises(InvalidInputError):
            ExponentField.of([0.9, 1.0], 2)

    def test_length(self):
        """The field needs one exponent per component."""
        with pytest.raises(DimensionError):
            ExponentField.of([1.0, 1.5, 2.0], (2, 2))

    def test_read_only(self):
        """Fields cannot be modified in place."""
        field = ExponentField.uniform((2, 2), 1.5)
        assert field.is_uniform()
        assert field.grid().shape == (2, 2)
        with pytest.raises(ValueError):
            field.per_component[0] = 1.0


class TestPenaltyFollowsLambda:
    """Tests for rho_mode="lambda"."""

    def setup_method(self):
        self.truth = make_signal_1d(200)
        self.op = make_partial_fourier(200, np.arange(40))
        self.y = self.op.forward(self.truth)
        self.laplacian = (gradient_matrix((200,)).T @ gradient_matrix((200,))).toarray()

    def test_penalty(self):
        """The penalty is rho·λ, or rho alone in fixed mode."""
        assert SolverConfig(rho=2.0, lam=3.0, rho_mode="lambda").penalty == 6.0
        assert SolverConfig(rho=2.0, lam=3.0).penalty == 2.0

    @pytest.mark.parametrize("lam", [1e-4, 1e-1, 1e2, 1e4])
    def test_tikhonov_converges_quickly(self, lam):
        """Homogeneous p=2 converges in few steps to the direct solve for any λ."""
        cfg = SolverConfig(lam=lam, rho_mode="lambda", max_iter=200, tol_primal=1e-8, tol_dual=1e-8)
        result = admm_solve(self.op, self.y, 2.0, cfg)
        direct = np.linalg.solve(self.op.gram_dense() + lam * self.laplacian, self.op.adjoint(self.y))
        assert result.converged
        assert result.iterations <= 100
        assert np.linalg.norm(result.u_hat.values - direct) <= 1e-7 * np.linalg.norm(direct)

    def test_solver_for_other_penalty(self):
        """A factorization for rho alone does not fit rho·λ."""
        cfg = SolverConfig(lam=5.0, rho_mode="lambda")
        with pytest.raises(InvalidInputError):
            admm_solve(self.op, self.y, 1.0, cfg, solver=NormalSolver(self.op, cfg.rho))
