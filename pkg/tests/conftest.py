"""Pytest configuration and fixtures for lpreg tests."""

from __future__ import annotations

import hashlib
import tempfile
from collections.abc import Callable
from pathlib import Path

import numpy as np
import pytest

from lpreg.core.config import ExperimentConfig
from lpreg.operators import lowest_frequencies, make_identity, make_partial_fourier


@pytest.fixture
def temp_dir():
    """Create a temporary directory for test files."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture
def dir_digest() -> Callable[..., dict[str, str]]:
    """Hash every file directly inside a directory, keyed by file name."""

    def digest(path: Path, exclude: tuple[str, ...] = ()) -> dict[str, str]:
        return {
            p.name: hashlib.sha256(p.read_bytes()).hexdigest()
            for p in sorted(path.iterdir())
            if p.is_file() and p.name not in exclude
        }

    return digest


@pytest.fixture
def rng():
    """Seeded random generator."""
    return np.random.default_rng(20240611)


@pytest.fixture
def fourier_1d():
    """Partial Fourier operator on 16 samples keeping the 6 lowest wavenumbers."""
    return make_partial_fourier(16, [0, 1, 2, 3, 4, 5])


@pytest.fixture
def fourier_2d():
    """8x8 partial Fourier operator keeping half of the x wavenumbers."""
    shape = (8, 8)
    return make_partial_fourier(shape, lowest_frequencies(shape, 0.5, "x"))


@pytest.fixture
def identity_1d():
    """Identity operator on 12 samples."""
    return make_identity(12)


@pytest.fixture
def small_experiment():
    """A 1D experiment small enough to run end to end in a few seconds."""
    return ExperimentConfig(
        source="builtin-1d",
        size=40,
        fraction=0.3,
        patch_size=5,
        nghd_size=2,
        samples=4,
        max_iter=300,
        tol_primal=1e-5,
        tol_dual=1e-5,
        final_lambdas=[1e-2, 1e-1],
        baseline_lambdas_p1=[1e-2, 1e-1],
        baseline_lambdas_p2=[1e-2, 1e-1],
        workers=1,
    )
