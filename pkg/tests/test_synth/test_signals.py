"""Tests for synthetic ground-truth signals and noise."""

from __future__ import annotations

import math

import numpy as np
import pytest

from lpreg.core.exceptions import InvalidInputError, InvalidSizeError
from lpreg.synth import (
    NoiseSpec,
    add_noise,
    grid,
    make_signal_1d,
    make_signal_2d,
    plateau_chirp,
    ring_profile,
    snr_report,
)


class TestSignal1D:
    """Tests for the plateau/chirp profile."""

    def test_plateau(self):
        """The plateau on [-0.7, -0.3] has value 1."""
        assert plateau_chirp(-0.5) == 1.0
        assert plateau_chirp(-0.7) == 1.0
        assert plateau_chirp(-0.3) == 1.0

    def test_zero_elsewhere(self):
        """Left of the plateau and on (-0.3, 0] the profile vanishes."""
        assert plateau_chirp(-0.9) == 0.0
        assert plateau_chirp(0.0) == 0.0

    def test_modulated_sine(self):
        """At x=0.5 the envelope is 1."""
        assert plateau_chirp(0.5) == pytest.approx(0.5 * (1 + math.sin(150.0)), abs=1e-14)
        assert plateau_chirp(0.5) == pytest.approx(0.1425618, abs=1e-7)

    def test_grid_includes_endpoints(self):
        """Nodes run from -1 to 1 inclusive."""
        x = grid(5)
        np.testing.assert_array_equal(x, [-1.0, -0.5, 0.0, 0.5, 1.0])

    def test_deterministic(self):
        """Repeated calls agree bit for bit."""
        np.testing.assert_array_equal(make_signal_1d(200).values, make_signal_1d(200).values)
        assert make_signal_1d(200).shape == (200,)

    def test_too_small(self):
        """At least two points are needed."""
        with pytest.raises(InvalidSizeError):
            make_signal_1d(1)


class TestSignal2D:
    """Tests for the radial ring profile."""

    def test_center(self):
        """cos(0) at the origin."""
        assert ring_profile(0.0) == 1.0

    def test_ramp_crosses_zero(self):
        """The ramp reaches 0 at r=0.5."""
        assert ring_profile(0.5) == pytest.approx(0.0, abs=1e-12)

    def test_flat_annulus(self):
        """The annulus between 5/9 and 13/18 is -1."""
        assert ring_profile(0.6) == -1.0

    def test_odd_grid_center_sample(self):
        """An odd grid samples the origin at its center."""
        u = make_signal_2d(9)
        assert u.shape == (9, 9)
        assert u.values[4, 4] == 1.0

    def test_radial_symmetry(self):
        """The image is symmetric under transposition."""
        u = make_signal_2d(32).values
        np.testing.assert_allclose(u, u.T, rtol=0, atol=1e-12)

    def test_too_small(self):
        """At least two points per axis are needed."""
        with pytest.raises(InvalidSizeError):
            make_signal_2d(0)


class TestNoise:
    """Tests for add_noise and snr_report."""

    def test_zero_sigma(self):
        """sigma=0 leaves the vector unchanged."""
        y = np.array([1.0, -2.0, 3.5])
        np.testing.assert_array_equal(add_noise(y, NoiseSpec(sigma=0.0, seed=3)), y)

    def test_reproducible(self):
        """The same seed gives the same noise."""
        y = np.zeros(50)
        spec = NoiseSpec(sigma=1.0, seed=42)
        np.testing.assert_array_equal(add_noise(y, spec), add_noise(y, spec))
        assert not np.array_equal(add_noise(y, spec), add_noise(y, NoiseSpec(sigma=1.0, seed=43)))

    def test_statistics(self):
        """Sample variance and mean of the added noise match sigma."""
        m = 100_000
        sigma = 2.0
        noise = add_noise(np.zeros(m), NoiseSpec(sigma=sigma, seed=7))
        assert abs(noise.var() - sigma**2) <= 0.02 * sigma**2
        assert abs(noise.mean()) <= 5 * sigma / math.sqrt(m)

    def test_negative_sigma(self):
        """Negative noise levels are rejected."""
        with pytest.raises(InvalidInputError):
            NoiseSpec(sigma=-1.0)

    def test_non_finite_measurements(self):
        """Measurements must be finite."""
        with pytest.raises(InvalidInputError):
            add_noise(np.array([1.0, np.nan]), NoiseSpec(sigma=1.0))

    def test_snr(self):
        """10 log10(mean(y²)/sigma²)."""
        assert snr_report(np.full(4, 10.0), 1.0) == pytest.approx(20.0)
        assert snr_report(np.ones(4), 0.0) == math.inf
