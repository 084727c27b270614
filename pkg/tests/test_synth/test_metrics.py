"""Tests for error metrics."""

from __future__ import annotations

import numpy as np
import pytest

from lpreg.core.exceptions import DimensionError
from lpreg.synth import error_metrics, improvement, pointwise_comparison


class TestErrorMetrics:
    """Tests for error_metrics."""

    def test_identical(self):
        """Identical signals have zero error."""
        u = np.array([1.0, -2.0, 3.0])
        report = error_metrics(u, u)
        assert report.l1 == 0.0
        assert report.l2 == 0.0

    def test_three_four_five(self):
        """Pointwise differences [3, 4] give l1=7 and l2=5."""
        report = error_metrics(np.array([3.0, 4.0]), np.zeros(2))
        assert report.l1 == 7.0
        assert report.l2 == 5.0
        np.testing.assert_array_equal(report.pointwise, [3.0, 4.0])

    def test_relative_errors(self):
        """Relative errors divide by the same norm of the truth."""
        truth = np.array([0.0, 2.0])
        report = error_metrics(np.array([1.0, 2.0]), truth)
        assert report.rel_l1 == pytest.approx(0.5)
        assert report.rel_l2 == pytest.approx(0.5)

    def test_triangle_inequality(self, rng):
        """l2(u, w) <= l2(u, v) + l2(v, w)."""
        for _ in range(50):
            u, v, w = rng.standard_normal((3, 20))
            assert error_metrics(u, w).l2 <= error_metrics(u, v).l2 + error_metrics(v, w).l2 + 1e-12

    def test_shape_mismatch(self):
        """Shapes must agree."""
        with pytest.raises(DimensionError):
            error_metrics(np.zeros(3), np.zeros(4))

    def test_summary_keys(self):
        """The summary holds scalars only."""
        summary = error_metrics(np.ones(2), np.zeros(2)).summary()
        assert set(summary) == {"l1", "l2", "rel_l1", "rel_l2"}


class TestImprovement:
    """Tests for improvement and pointwise_comparison."""

    def test_ten_percent(self):
        """e_base=10, e_new=9 is a 10% improvement."""
        base = error_metrics(np.array([10.0]), np.zeros(1))
        new = error_metrics(np.array([9.0]), np.zeros(1))
        gain = improvement(base, new)
        assert gain.l1 == pytest.approx(0.1)
        assert gain.l2 == pytest.approx(0.1)

    def test_pointwise_comparison(self):
        """Negative entries mark where the first method is closer."""
        truth = np.zeros(3)
        first = error_metrics(np.array([0.1, 2.0, 0.0]), truth)
        second = error_metrics(np.array([1.0, 1.0, 0.0]), truth)
        np.testing.assert_allclose(pointwise_comparison(first, second), [-0.9, 1.0, 0.0])
