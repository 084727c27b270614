"""Tests for mean-gradient statistics."""

from __future__ import annotations

import numpy as np
import pytest

from lpreg.core.exceptions import DimensionError, InvalidInputError
from lpreg.exponent import gradient_stats
from lpreg.operators.gradient import grad
from lpreg.operators.signal import Signal


class TestGradientStats:
    """Tests for gradient_stats."""

    def test_single_sample(self, rng):
        """With one sample the mean is its gradient."""
        u = Signal.of(rng.standard_normal(20))
        stats = gradient_stats([u], [u])
        np.testing.assert_array_equal(stats.g1.values, grad(u.values, u.shape))
        np.testing.assert_array_equal(stats.mag1, np.abs(stats.g1.values))

    def test_opposite_samples_cancel(self, rng):
        """u and -u average to a zero gradient."""
        u = rng.standard_normal(15)
        stats = gradient_stats([Signal.of(u), Signal.of(-u)], [Signal.of(u)])
        np.testing.assert_array_equal(stats.g1.values, np.zeros(15))

    def test_permutation_bit_exact(self, rng):
        """Sample order does not change a single bit."""
        samples = [Signal.of(rng.standard_normal((6, 7))) for _ in range(9)]
        order = rng.permutation(9)
        first = gradient_stats(samples, samples)
        second = gradient_stats([samples[i] for i in order], samples)
        np.testing.assert_array_equal(first.g1.values, second.g1.values)
        np.testing.assert_array_equal(first.mag1, second.mag1)

    def test_pooling_inputs(self, rng):
        """1D pools signed differences, 2D pools magnitudes."""
        u1 = Signal.of(rng.standard_normal(10))
        g1, _ = gradient_stats([u1], [u1]).pooling_inputs()
        np.testing.assert_array_equal(g1, grad(u1.values, u1.shape))

        u2 = Signal.of(rng.standard_normal((4, 5)))
        stats = gradient_stats([u2], [u2])
        m1, _ = stats.pooling_inputs()
        assert m1.shape == (20,)
        assert np.all(m1 >= 0.0)

    def test_empty(self, rng):
        """Both sample lists must be non-empty."""
        u = Signal.of(rng.standard_normal(5))
        with pytest.raises(InvalidInputError):
            gradient_stats([], [u])
        with pytest.raises(InvalidInputError):
            gradient_stats([u], [])

    def test_shape_mismatch(self, rng):
        """Samples must share one shape."""
        with pytest.raises(DimensionError):
            gradient_stats([Signal.of(np.zeros(5)), Signal.of(np.zeros(6))], [Signal.of(np.zeros(5))])
        with pytest.raises(DimensionError):
            gradient_stats([Signal.of(np.zeros(5))], [Signal.of(np.zeros(6))])
