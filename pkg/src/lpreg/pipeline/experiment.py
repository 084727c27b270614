"""End-to-end experiment: truth, measurement, design, solves, metrics, artifacts."""

from __future__ import annotations

import logging
from collections.abc import Iterator, Sequence
from contextlib import contextmanager
from pathlib import Path

import msgspec
import numpy as np

from lpreg.admm.normal import NormalSolver
from lpreg.admm.solver import objective
from lpreg.admm.state import ExponentField, ReconstructionResult
from lpreg.core.config import ExperimentConfig, echo_experiment, get_config
from lpreg.core.exceptions import ImageIOError, LpRegError, StageError
from lpreg.exponent.classify import class_fractions, split_exponents
from lpreg.operators.masks import load_mask, lowest_frequencies, strided_frequencies
from lpreg.operators.measurement import (
    MeasurementOperator,
    PartialFourierOperator,
    make_identity,
    make_partial_fourier,
)
from lpreg.operators.signal import Signal
from lpreg.pipeline.artifacts import ArtifactWriter
from lpreg.pipeline.design import DesignResult, design_exponents
from lpreg.pipeline.samples import solve_lambdas
from lpreg.synth.imageio import downsample_image, load_array, load_image
from lpreg.synth.metrics import ErrorReport, error_metrics, improvement, pointwise_comparison
from lpreg.synth.noise import NoiseSpec, add_noise, snr_report
from lpreg.synth.signals import make_signal_1d, make_signal_2d

logger = logging.getLogger(__name__)

PROPOSED = "proposed"


class MethodReport(msgspec.Struct, frozen=True):
    """Best reconstruction of one method over its λ grid.

    Attributes:
        l1: ℓ1 error of the best reconstruction.
        l2: ℓ2 error of the best reconstruction.
        rel_l1: ``l1`` relative to the truth.
        rel_l2: ``l2`` relative to the truth.
        lambda_used: λ of the best reconstruction (smallest ℓ2 error).
        iterations: ADMM iterations of the best reconstruction.
        converged: Whether that solve met its tolerances.
        objective: Objective value of the best reconstruction under the
            method's own exponents.
        lambdas: The λ grid.
        l2_by_lambda: ℓ2 error for every λ of the grid.
    """

    l1: float
    l2: float
    rel_l1: float
    rel_l2: float
    lambda_used: float
    iterations: int
    converged: bool
    objective: float
    lambdas: list[float]
    l2_by_lambda: list[float]


class ExperimentReport(msgspec.Struct, frozen=True):
    """Summary written to ``errors.json``.

    Attributes:
        methods: Report per method (``proposed``, ``p1``, ``p2`` and, for 1D
            builtin signals, ``split``).
        improvement: Relative ℓ1/ℓ2 improvement of ``proposed`` over each
            other method.
        class_fractions: Share of components per patch class.
        snr_db: Reported SNR of the measurements; None without noise.
        output_dir: Artifact directory.
        artifacts: File names written, sorted.
        unconverged_samples: λ values of design samples that stopped at
            ``max_iter``, keyed by sample exponent.
    """

    methods: dict[str, MethodReport]
    improvement: dict[str, dict[str, float]]
    class_fractions: dict[str, float]
    snr_db: float | None
    output_dir: str
    artifacts: list[str]
    unconverged_samples: dict[int, list[float]] = msgspec.field(default_factory=dict)


@contextmanager
def _stage(name: str) -> Iterator[None]:
    """Attach the stage name to library errors raised inside the block."""
    logger.info("Stage: %s", name)
    try:
        yield
    except StageError:
        raise
    except LpRegError as e:
        raise StageError(f"{name}: {e.message}", details={"stage": name, **e.details}) from e


class Problem(msgspec.Struct, frozen=True, eq=False):
    """Prepared inputs shared by every stage after measurement.

    ``solver`` is None when the penalty follows λ and every solve is factored
    on its own.
    """

    truth: Signal
    op: MeasurementOperator
    clean: np.ndarray
    y: np.ndarray
    solver: NormalSolver | None


class _Method(msgspec.Struct, frozen=True, eq=False):
    best: ReconstructionResult
    errors: ErrorReport
    report: MethodReport


class ExperimentRunner:
    """Runs one configured experiment.

    Args:
        config: Validated experiment description.
        workers: Thread count overriding ``config.workers``.
    """

    def __init__(self, config: ExperimentConfig, workers: int | None = None) -> None:
        self._config = config
        self._workers = workers if workers is not None else config.workers

    @property
    def config(self) -> ExperimentConfig:
        return self._config

    @property
    def workers(self) -> int | None:
        return self._workers

    def build_truth(self) -> Signal:
        """Ground truth from the configured source."""
        cfg = self._config
        if cfg.source == "builtin-1d":
            return make_signal_1d(cfg.size)
        if cfg.source == "builtin-2d":
            return make_signal_2d(cfg.size)
        image = load_image(cfg.image_path)
        if cfg.image_size is not None and image.shape != (cfg.image_size, cfg.image_size):
            image = downsample_image(image, cfg.image_size)
        return image

    def build_operator(self, shape: tuple[int, ...]) -> MeasurementOperator:
        """Measurement operator from the mask file or selection rule."""
        cfg = self._config
        if cfg.selection == "identity" and not cfg.mask_path:
            return make_identity(shape)
        if cfg.mask_path:
            selection = load_mask(cfg.mask_path, shape)
        elif cfg.selection == "stride":
            selection = strided_frequencies(shape, cfg.stride, cfg.axis)
        else:
            selection = lowest_frequencies(shape, cfg.fraction, cfg.axis)
        return make_partial_fourier(shape, selection)

    def _evaluate(
        self,
        op: MeasurementOperator,
        y: np.ndarray,
        truth: Signal,
        lambdas: Sequence[float],
        p: ExponentField | float,
        solver: NormalSolver | None,
        stage: str,
    ) -> _Method:
        cfg = self._config
        results = solve_lambdas(op, y, lambdas, p, cfg.solver_config(), solver, self._workers, stage)
        errors = [error_metrics(r.u_hat, truth) for r in results]
        index = int(np.argmin([e.l2 for e in errors]))
        best, best_errors = results[index], errors[index]
        logger.info("%s: best lambda=%g l2=%.6g", stage, best.lam, best_errors.l2)
        report = MethodReport(
            l1=best_errors.l1,
            l2=best_errors.l2,
            rel_l1=best_errors.rel_l1,
            rel_l2=best_errors.rel_l2,
            lambda_used=best.lam,
            iterations=best.iterations,
            converged=best.converged,
            objective=objective(op, y, best.u_hat, p, best.lam),
            lambdas=[float(lam) for lam in lambdas],
            l2_by_lambda=[e.l2 for e in errors],
        )
        return _Method(best=best, errors=best_errors, report=report)

    def prepare(self) -> Problem:
        """Build the truth, the operator, the noisy measurements and the factorization."""
        cfg = self._config
        with _stage("truth"):
            truth = self.build_truth()
        with _stage("measure"):
            op = self.build_operator(truth.shape)
            clean = op.forward(truth)
            y = add_noise(clean, NoiseSpec(sigma=cfg.sigma, seed=cfg.seed))
        solver = None
        if cfg.rho_mode == "fixed":
            with _stage("factor"):
                solver = NormalSolver(op, cfg.rho)
        return Problem(truth=truth, op=op, clean=clean, y=y, solver=solver)

    def design(self, problem: Problem) -> DesignResult:
        """Exponent design on prepared measurements."""
        cfg = self._config
        with _stage("design"):
            return design_exponents(
                problem.op,
                problem.y,
                cfg.design_hyper(),
                cfg.solver_config(),
                problem.solver,
                self._workers,
            )

    def run_design(self, output_dir: Path | str | None = None) -> DesignResult:
        """Design exponents and write the inputs, class map and exponent map only."""
        problem = self.prepare()
        design = self.design(problem)
        with _stage("artifacts"):
            writer = ArtifactWriter(self._output_dir(output_dir))
            self._write_design(writer, problem, design)
        return design

    def run(self, output_dir: Path | str | None = None) -> ExperimentReport:
        """Run every stage and write the artifacts.

        Args:
            output_dir: Overrides ``config.output_dir``, which in turn falls back
                to the application setting.

        Raises:
            StageError: If a stage fails; ``details["stage"]`` names it.
        """
        cfg = self._config
        problem = self.prepare()
        design = self.design(problem)
        op, y, truth, solver = problem.op, problem.y, problem.truth, problem.solver

        methods: dict[str, _Method] = {}
        with _stage(PROPOSED):
            methods[PROPOSED] = self._evaluate(
                op, y, truth, cfg.final_lambdas, design.exponents, solver, PROPOSED
            )
        with _stage("baselines"):
            methods["p1"] = self._evaluate(op, y, truth, cfg.baseline_lambdas_p1, 1.0, solver, "p1")
            methods["p2"] = self._evaluate(op, y, truth, cfg.baseline_lambdas_p2, 2.0, solver, "p2")
            if cfg.source == "builtin-1d" and cfg.split_at is not None:
                split = split_exponents(truth.shape, cfg.split_at)
                methods["split"] = self._evaluate(
                    op, y, truth, cfg.final_lambdas, split, solver, "split"
                )

        with _stage("artifacts"):
            writer = ArtifactWriter(self._output_dir(output_dir))
            self._write_design(writer, problem, design)
            return self._write_results(writer, problem, design, methods)

    def _output_dir(self, output_dir: Path | str | None) -> Path:
        for candidate in (output_dir, self._config.output_dir):
            if candidate is not None:
                return Path(candidate)
        return Path(get_config().output_dir)

    def _write_design(self, writer: ArtifactWriter, problem: Problem, design: DesignResult) -> None:
        truth = problem.truth
        writer.text("config.echo", echo_experiment(self._config))
        writer.array("truth", truth.values)
        writer.array("measurement", problem.y)
        if isinstance(problem.op, PartialFourierOperator):
            writer.mask("mask.txt", problem.op.selection)

        grid = design.grid
        codes = np.asarray(design.classes.codes, dtype=np.float64)
        writer.array("classmap", grid.values_grid(codes), render=None)
        exponents = design.exponents.grid()
        writer.array("exponents", exponents, render=None)
        if truth.ndim == 2:
            # codes 0, 1, 2 render as black, grey, white
            pixels = codes[grid.labels].reshape(grid.shape) * 127.0
            writer.array("classmap_pixels", pixels, render="none")
            writer.array("exponents_pixels", (exponents - 1.0) * 255.0, render="none")
        for name, values in design.maps.as_dict().items():
            writer.array(f"pooling_{name}", grid.values_grid(values), render=None)

    def _write_results(
        self,
        writer: ArtifactWriter,
        problem: Problem,
        design: DesignResult,
        methods: dict[str, _Method],
    ) -> ExperimentReport:
        cfg = self._config
        for name, method in methods.items():
            writer.array(f"recon_{name}", method.best.u_hat.values)
            writer.array(f"pointwise_{name}", method.errors.pointwise)
            writer.history(name, method.best)

        proposed = methods[PROPOSED].errors
        gains: dict[str, dict[str, float]] = {}
        for name, method in methods.items():
            if name == PROPOSED:
                continue
            gain = improvement(method.errors, proposed)
            gains[name] = {"l1": gain.l1, "l2": gain.l2}
            writer.array(f"compare_{PROPOSED}_{name}", pointwise_comparison(proposed, method.errors))

        artifacts = sorted([*writer.written, "errors.json"])
        report = ExperimentReport(
            methods={name: m.report for name, m in methods.items()},
            improvement=gains,
            class_fractions=dict(class_fractions(design.classes, design.grid)),
            snr_db=snr_report(problem.clean, cfg.sigma) if cfg.sigma > 0 else None,
            output_dir=str(writer.directory),
            artifacts=artifacts,
            unconverged_samples=design.unconverged,
        )
        writer.json("errors.json", report)
        logger.info("Wrote %d artifacts to %s", len(artifacts), writer.directory)
        return report


def run_experiment(
    config: ExperimentConfig,
    output_dir: Path | str | None = None,
    workers: int | None = None,
) -> ExperimentReport:
    """Convenience wrapper around :class:`ExperimentRunner`."""
    return ExperimentRunner(config, workers=workers).run(output_dir)


def recompute_report(output_dir: Path | str) -> dict[str, dict[str, float]]:
    """Error metrics of every ``recon_<method>.csv`` against ``truth.csv``.

    Raises:
        ImageIOError: If the directory holds no truth or reconstructions.
    """
    out = Path(output_dir)
    truth = load_array(out / "truth.csv")
    recons = sorted(out.glob("recon_*.csv"))
    if not recons:
        raise ImageIOError(f"No reconstructions found in {out}")
    summary: dict[str, dict[str, float]] = {}
    for path in recons:
        method = path.stem.removeprefix("recon_")
        summary[method] = error_metrics(load_array(path), truth).summary()
    return summary

