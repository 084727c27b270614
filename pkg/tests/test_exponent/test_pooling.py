"""Tests for pooling, normalization and the directional filter."""

from __future__ import annotations

import numpy as np
import pytest

from lpreg.core.exceptions import DimensionError, InvalidInputError
from lpreg.exponent import (
    PoolingMap,
    average_pool,
    build_patch_grid,
    minmax_normalize,
    nghd_filter,
    variance_pool,
)


def _map(values: list[float]) -> PoolingMap:
    return PoolingMap(values=np.array(values, dtype=np.float64), kind="normalized")


class TestVariancePool:
    """Tests for variance_pool."""

    def test_constant_patch(self):
        """Constant magnitudes have zero variance."""
        grid = build_patch_grid(6, 3)
        np.testing.assert_array_equal(variance_pool(np.full(6, 0.7), grid).values, [0.0, 0.0])

    def test_sign_only_difference(self):
        """Values -1 and 1 share one magnitude."""
        grid = build_patch_grid(2, 2)
        assert variance_pool(np.array([-1.0, 1.0]), grid).values[0] == 0.0

    def test_known_value(self):
        """[1, 2, 3] has variance 2/3."""
        grid = build_patch_grid(3, 3)
        assert variance_pool(np.array([1.0, 2.0, 3.0]), grid).values[0] == pytest.approx(2.0 / 3.0)

    def test_sign_flip_invariance(self, rng):
        """Pooling only sees magnitudes."""
        grid = build_patch_grid(40, 5)
        g = rng.standard_normal(40)
        np.testing.assert_array_equal(variance_pool(g, grid).values, variance_pool(-g, grid).values)

    def test_nonnegative_2d(self, rng):
        """Variances are never negative."""
        grid = build_patch_grid((9, 9), 4)
        assert np.all(variance_pool(rng.standard_normal(81), grid).values >= 0.0)

    def test_wrong_length(self):
        """Values must cover the grid."""
        with pytest.raises(DimensionError):
            variance_pool(np.zeros(5), build_patch_grid(6, 3))


class TestAveragePool:
    """Tests for average_pool."""

    def test_known_values(self):
        """Patch means of magnitudes."""
        grid = build_patch_grid(6, 2)
        g = np.array([0.0, 0.0, 1.0, -1.0, 2.0, 2.0])
        np.testing.assert_array_equal(average_pool(g, grid).values, [0.0, 1.0, 2.0])


class TestMinmaxNormalize:
    """Tests for minmax_normalize."""

    def test_known_values(self):
        """[2, 4, 6] maps to [0, 0.5, 1]."""
        np.testing.assert_allclose(minmax_normalize(_map([2.0, 4.0, 6.0])).values, [0.0, 0.5, 1.0])

    def test_constant_map(self):
        """A constant map becomes all zeros."""
        np.testing.assert_array_equal(minmax_normalize(_map([3.0, 3.0, 3.0])).values, [0.0, 0.0, 0.0])

    def test_scale_invariance(self, rng):
        """Positive scaling leaves the normalized map unchanged."""
        values = rng.uniform(0.0, 5.0, 12)
        base = minmax_normalize(_map(list(values))).values
        scaled = minmax_normalize(_map(list(values * 4.0))).values
        np.testing.assert_array_equal(base, scaled)

    def test_range(self, rng):
        """Output lies in [0, 1] with both ends attained."""
        out = minmax_normalize(_map(list(rng.standard_normal(20)))).values
        assert out.min() == 0.0
        assert out.max() == 1.0


class TestNghdFilter:
    """Tests for nghd_filter."""

    def test_1d_center(self):
        """The center of [0, .9, .1, .9, 0] sees 0.9 on both sides."""
        grid = build_patch_grid(5, 1)
        out = nghd_filter(_map([0.0, 0.9, 0.1, 0.9, 0.0]), grid, 1)
        assert out.values[2] == 0.9

    def test_1d_modes_differ(self):
        """Joint takes the larger side, per-side the smaller."""
        grid = build_patch_grid(5, 1)
        vmap = _map([0.0, 0.9, 0.1, 0.3, 0.0])
        assert nghd_filter(vmap, grid, 1, "joint").values[2] == 0.9
        assert nghd_filter(vmap, grid, 1, "per-side").values[2] == 0.3

    def test_1d_boundary(self):
        """Out-of-domain neighbors are dropped in both modes."""
        grid = build_patch_grid(5, 1)
        vmap = _map([0.0, 0.9, 0.1, 0.3, 0.0])
        assert nghd_filter(vmap, grid, 1, "joint").values[0] == 0.9
        assert nghd_filter(vmap, grid, 1, "per-side").values[0] == 0.9
        assert nghd_filter(vmap, grid, 2, "per-side").values[4] == 0.3

    def test_center_excluded(self):
        """A large center value does not reach its own filter value."""
        grid = build_patch_grid(3, 1)
        assert nghd_filter(_map([0.0, 1.0, 0.0]), grid, 1).values[1] == 0.0

    def test_constant_map(self):
        """A constant map is reproduced."""
        grid = build_patch_grid((4, 4), 1)
        out = nghd_filter(_map([0.25] * 16), grid, 2)
        np.testing.assert_array_equal(out.values, np.full(16, 0.25))

    def test_2d_horizontal_zeros(self):
        """Zero horizontal neighbors force the minimum to 0."""
        grid = build_patch_grid((3, 3), 1)
        values = np.ones((3, 3))
        values[1, 0] = 0.0
        values[1, 2] = 0.0
        out = nghd_filter(PoolingMap(values=values.reshape(-1), kind="normalized"), grid, 1)
        assert out.values[4] == 0.0

    def test_single_patch(self):
        """A patch without neighbors gets 0."""
        grid = build_patch_grid(3, 3)
        assert nghd_filter(_map([0.8]), grid, 1).values[0] == 0.0

    def test_invalid_reach(self):
        """The reach must be at least 1."""
        with pytest.raises(InvalidInputError):
            nghd_filter(_map([0.0, 1.0]), build_patch_grid(2, 1), 0)
