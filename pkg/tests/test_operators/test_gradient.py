"""Tests for the forward-difference gradient."""

from __future__ import annotations

import numpy as np
import pytest

from lpreg.core.exceptions import DimensionError
from lpreg.operators import (
    GradientField,
    Signal,
    grad,
    grad_adjoint,
    gradient_adjoint,
    gradient_apply,
    gradient_matrix,
)


class TestGradientApply:
    """Tests for gradient_apply."""

    def test_constant_is_annihilated(self):
        """Constants have zero gradient exactly."""
        assert np.all(gradient_apply(Signal.of(np.full(7, 3.25))).values == 0.0)
        assert np.all(gradient_apply(Signal.of(np.full((4, 5), -1.5))).values == 0.0)

    def test_forward_differences(self):
        """[1, 2, 4] has differences [1, 2] and a zero last entry."""
        np.testing.assert_array_equal(gradient_apply(Signal.of([1, 2, 4])).values, [1, 2, 0])

    def test_separable_ramp(self):
        """u(r, c) = c has unit x-differences except the last column."""
        u = Signal.of(np.tile(np.arange(3.0), (3, 1)))
        values = gradient_apply(u).values
        dx, dy = values[:9].reshape(3, 3), values[9:].reshape(3, 3)
        np.testing.assert_array_equal(dx, [[1, 1, 0]] * 3)
        np.testing.assert_array_equal(dy, 0.0)

    def test_field_length(self):
        """M = N in 1D and 2N in 2D."""
        assert gradient_apply(Signal.of(np.zeros(5))).values.size == 5
        assert gradient_apply(Signal.of(np.zeros((3, 4)))).values.size == 24

    def test_magnitude(self):
        """Per-pixel norms combine both directions."""
        field = GradientField(values=np.array([3.0, 0.0, 4.0, 0.0]), shape=(1, 2))
        np.testing.assert_array_equal(field.magnitude(), [[5.0, 0.0]])


class TestGradientAdjoint:
    """Tests for gradient_adjoint."""

    def test_zero(self):
        """Fᵀ0 = 0."""
        out = gradient_adjoint(GradientField(values=np.zeros(8), shape=(2, 2)))
        np.testing.assert_array_equal(out, 0.0)

    def test_explicit_transpose(self):
        """The first unit vector maps to [-1, 1, 0] for N=3."""
        np.testing.assert_array_equal(grad_adjoint(np.array([1.0, 0.0, 0.0]), (3,)), [-1, 1, 0])

    @pytest.mark.parametrize("shape", [(1,), (9,), (1, 5), (4, 1), (5, 7)])
    def test_adjoint_identity(self, rng, shape):
        """⟨Fu, v⟩ = ⟨u, Fᵀv⟩."""
        u = rng.standard_normal(shape)
        v = rng.standard_normal(len(shape) * u.size)
        lhs = float(grad(u, shape) @ v)
        rhs = float(np.sum(u * grad_adjoint(v, shape)))
        assert abs(lhs - rhs) <= 1e-12 * max(abs(lhs), 1.0)

    @pytest.mark.parametrize("shape", [(6,), (3, 4)])
    def test_sparse_matrix_agrees(self, rng, shape):
        """The sparse matrix of F matches the matrix-free action."""
        u = rng.standard_normal(shape)
        np.testing.assert_allclose(gradient_matrix(shape) @ u.reshape(-1), grad(u, shape))

    def test_length_mismatch(self):
        """Vectors of the wrong length raise DimensionError."""
        with pytest.raises(DimensionError):
            grad_adjoint(np.zeros(5), (2, 2))
        with pytest.raises(DimensionError):
            GradientField(values=np.zeros(3), shape=(4,))
