"""Long-running checks on the shipped experiment files.

Deselected by default; run with ``pytest -m slow``.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from lpreg.core.config import load_experiment, log_grid
from lpreg.exponent import build_patch_grid
from lpreg.pipeline import ExperimentRunner, pooling_distribution, sample_solves
from lpreg.synth.signals import grid, make_signal_1d

EXPERIMENTS = Path(__file__).resolve().parents[2] / "config" / "experiments"


def _jump_patches(n: int, patch_size: int) -> list[int]:
    truth = make_signal_1d(n).values
    patches = build_patch_grid(n, patch_size)
    jumps = np.flatnonzero(np.abs(np.diff(truth)) > 0.5)
    return sorted({patches.patch_of(int(i)) for i in jumps})


@pytest.mark.slow
class TestSignal1d:
    """Plateau and chirp signal from 20% of its lowest frequencies."""

    def setup_method(self):
        self.config = load_experiment(EXPERIMENTS / "signal1d.yaml", {"samples": 32})

    def test_classes_and_errors(self, temp_dir):
        runner = ExperimentRunner(self.config)
        problem = runner.prepare()
        design = runner.design(problem)
        labels = design.classes.labels()
        assert design.unconverged == {}

        jumps = _jump_patches(self.config.size, self.config.patch_size)
        assert len(jumps) == 2
        assert all(labels[j] == "discontinuity" for j in jumps)

        x = grid(self.config.size)
        band = [
            j for j, idx in enumerate(design.grid.patches()) if np.all((x[idx] > 0.4) & (x[idx] < 0.6))
        ]
        assert band
        assert all(labels[j] == "oscillation" for j in band)

        report = runner.run(temp_dir / "signal1d")
        proposed = report.methods["proposed"].l2
        assert proposed < report.methods["p1"].l2
        assert proposed < report.methods["p2"].l2

    @pytest.mark.parametrize("p", [1, 2])
    def test_samples_converge(self, p):
        """Homogeneous solves reach the tolerance over the whole sampling range."""
        runner = ExperimentRunner(self.config)
        problem = runner.prepare()
        lambdas = log_grid(self.config.lambda_lo, self.config.lambda_hi, 9)
        results = sample_solves(
            problem.op, problem.y, lambdas, p, self.config.solver_config(), workers=runner.workers
        )
        assert [r.lam for r in results if not r.converged] == []

    def test_jump_labels_stable(self):
        runner = ExperimentRunner(self.config)
        problem = runner.prepare()
        result = pooling_distribution(
            problem.op,
            problem.y,
            self.config.design_hyper(),
            self.config.solver_config(),
            20,
            problem.solver,
            runner.workers,
        )
        jumps = _jump_patches(self.config.size, self.config.patch_size)
        assert result.agreement(jumps) >= 0.9


@pytest.mark.slow
class TestRing2d:
    """Noisy ring image from 25% of its x wavenumbers."""

    def test_improvement_bands(self, temp_dir):
        config = load_experiment(EXPERIMENTS / "ring2d.yaml")
        report = ExperimentRunner(config).run(temp_dir / "ring2d")
        assert 0.03 <= report.improvement["p1"]["l1"] <= 0.20
        assert 0.08 <= report.improvement["p2"]["l1"] <= 0.35
