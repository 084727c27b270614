"""Command-line interface for lpreg."""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Annotated, Literal

import cyclopts
import msgspec

from lpreg import __version__
from lpreg.admm.solver import admm_solve
from lpreg.admm.state import ExponentField
from lpreg.core.config import SolverConfig, get_config, load_experiment
from lpreg.core.exceptions import InvalidInputError, LpRegError
from lpreg.core.log import configure_logging
from lpreg.operators.masks import load_mask, lowest_frequencies, save_mask, strided_frequencies
from lpreg.operators.measurement import (
    MeasurementOperator,
    PartialFourierOperator,
    make_identity,
    make_partial_fourier,
)
from lpreg.operators.signal import Shape, normalize_shape
from lpreg.pipeline.experiment import ExperimentRunner, recompute_report
from lpreg.pipeline.stability import pooling_distribution
from lpreg.synth.imageio import load_array, save_array
from lpreg.synth.noise import NoiseSpec, add_noise
from lpreg.synth.signals import make_signal_1d, make_signal_2d

app = cyclopts.App(
    name="lpreg",
    help="Signal and image recovery with designed inhomogeneous lp regularization.",
    version=__version__,
)


def _parse_shape(text: str) -> Shape:
    """``"200"`` or ``"128x128"``."""
    try:
        parts = [int(p) for p in text.lower().split("x")]
    except ValueError as e:
        raise InvalidInputError(f"Invalid shape {text!r}; use N or NxN") from e
    return normalize_shape(tuple(parts))


def _operator(
    shape: Shape,
    mask: Path | None,
    fraction: float | None,
    stride: int | None,
    axis: Literal["x", "y"],
    identity: bool,
) -> MeasurementOperator:
    if identity:
        return make_identity(shape)
    if mask is not None:
        selection = load_mask(mask, shape)
    elif stride is not None:
        selection = strided_frequencies(shape, stride, axis)
    else:
        selection = lowest_frequencies(shape, fraction if fraction is not None else 0.2, axis)
    return make_partial_fourier(shape, selection)


@app.command
def generate(
    kind: Annotated[Literal["1d", "2d"], cyclopts.Parameter(help="Builtin signal")],
    size: Annotated[
        int | None,
        cyclopts.Parameter(name=["--size", "-n"], help="Grid size (default 200 in 1D, 128 in 2D)"),
    ] = None,
    output: Annotated[
        Path,
        cyclopts.Parameter(name=["--output", "-o"], help="Output CSV file"),
    ] = Path("truth.csv"),
) -> None:
    """Write a builtin ground-truth signal.

    Examples:
        lpreg generate 1d -o truth.csv
        lpreg generate 2d --size 64
    """
    if kind == "1d":
        signal = make_signal_1d(size if size is not None else 200)
    else:
        signal = make_signal_2d(size if size is not None else 128)
    print(f"Created: {save_array(output, signal)}")


@app.command
def measure(
    truth: Annotated[Path, cyclopts.Parameter(help="Truth CSV file")],
    output: Annotated[
        Path,
        cyclopts.Parameter(name=["--output", "-o"], help="Output measurement CSV"),
    ] = Path("measurement.csv"),
    mask: Annotated[Path | None, cyclopts.Parameter(name="--mask", help="Mask file")] = None,
    fraction: Annotated[
        float | None,
        cyclopts.Parameter(name="--fraction", help="Lowest-frequency fraction (default 0.2)"),
    ] = None,
    stride: Annotated[
        int | None,
        cyclopts.Parameter(name="--stride", help="Keep every stride-th wavenumber"),
    ] = None,
    axis: Annotated[Literal["x", "y"], cyclopts.Parameter(name="--axis")] = "x",
    identity: Annotated[
        bool,
        cyclopts.Parameter(name="--identity", help="Measure every component directly"),
    ] = False,
    sigma: Annotated[float, cyclopts.Parameter(name="--sigma", help="Noise level")] = 0.0,
    seed: Annotated[int, cyclopts.Parameter(name="--seed", help="Noise seed")] = 0,
    save_mask_to: Annotated[
        Path | None,
        cyclopts.Parameter(name="--save-mask", help="Write the selection as a mask file"),
    ] = None,
) -> None:
    """Apply a measurement operator and Gaussian noise to a stored signal.

    Examples:
        lpreg measure truth.csv --fraction 0.2 -o y.csv --save-mask mask.txt
        lpreg measure truth.csv --stride 3 --sigma 2.08
    """
    u = load_array(truth)
    op = _operator(normalize_shape(u.shape), mask, fraction, stride, axis, identity)
    y = add_noise(op.forward(u), NoiseSpec(sigma=sigma, seed=seed))
    print(f"Created: {save_array(output, y)}")
    if save_mask_to is not None:
        if not isinstance(op, PartialFourierOperator):
            raise InvalidInputError("--save-mask needs a Fourier selection")
        print(f"Created: {save_mask(save_mask_to, op.selection)}")


@app.command
def reconstruct(
    measurements: Annotated[Path, cyclopts.Parameter(help="Measurement CSV file")],
    shape: Annotated[str, cyclopts.Parameter(name="--shape", help="Signal shape, N or NxN")],
    output: Annotated[
        Path,
        cyclopts.Parameter(name=["--output", "-o"], help="Output reconstruction CSV"),
    ] = Path("recon.csv"),
    p: Annotated[float, cyclopts.Parameter(name="--p", help="Homogeneous exponent")] = 1.0,
    exponents: Annotated[
        Path | None,
        cyclopts.Parameter(name="--exponents", help="Exponent map CSV (overrides --p)"),
    ] = None,
    lam: Annotated[float, cyclopts.Parameter(name="--lambda", help="Regularization weight")] = 1.0,
    rho: Annotated[float, cyclopts.Parameter(name="--rho")] = 1.0,
    rho_mode: Annotated[
        Literal["fixed", "lambda"],
        cyclopts.Parameter(name="--rho-mode", help="Use --rho as is, or as a factor on λ"),
    ] = "fixed",
    max_iter: Annotated[int, cyclopts.Parameter(name="--max-iter")] = 2000,
    mask: Annotated[Path | None, cyclopts.Parameter(name="--mask", help="Mask file")] = None,
    fraction: Annotated[float | None, cyclopts.Parameter(name="--fraction")] = None,
    stride: Annotated[int | None, cyclopts.Parameter(name="--stride")] = None,
    axis: Annotated[Literal["x", "y"], cyclopts.Parameter(name="--axis")] = "x",
    identity: Annotated[bool, cyclopts.Parameter(name="--identity")] = False,
    history: Annotated[
        Path | None,
        cyclopts.Parameter(name="--history", help="Write the convergence history CSV"),
    ] = None,
) -> None:
    """Solve one lp-regularized reconstruction.

    Examples:
        lpreg reconstruct y.csv --shape 200 --mask mask.txt --p 2 --lambda 1.0
        lpreg reconstruct y.csv --shape 128x128 --fraction 0.25 --exponents exponents.csv
    """
    signal_shape = _parse_shape(shape)
    op = _operator(signal_shape, mask, fraction, stride, axis, identity)
    y = load_array(measurements).reshape(-1)
    field = (
        ExponentField.of(load_array(exponents), signal_shape)
        if exponents is not None
        else ExponentField.uniform(signal_shape, p)
    )
    cfg = SolverConfig(rho=rho, lam=lam, max_iter=max_iter, rho_mode=rho_mode)
    result = admm_solve(op, y, field, cfg)
    print(f"Created: {save_array(output, result.u_hat)}")
    if history is not None:
        print(f"Created: {result.write_history(history)}")
    status = "converged" if result.converged else "not converged"
    print(f"{status} after {result.iterations} iterations")


@app.command
def design(
    config: Annotated[Path, cyclopts.Parameter(name=["--config", "-c"], help="Experiment file")],
    output: Annotated[
        Path | None,
        cyclopts.Parameter(name=["--output", "-o"], help="Output directory"),
    ] = None,
    workers: Annotated[
        int | None,
        cyclopts.Parameter(name=["--workers", "-w"], help="Worker threads (0 = all CPUs)"),
    ] = None,
) -> None:
    """Design the exponent map and write class and exponent maps.

    Examples:
        lpreg design -c config/experiments/signal1d.yaml -o out/design
    """
    experiment = load_experiment(config)
    result = ExperimentRunner(experiment, workers=workers).run_design(output)
    print(f"Designed {result.grid.count} patches from {len(result.schedule)} lambda values")


@app.command
def run(
    config: Annotated[Path, cyclopts.Parameter(name=["--config", "-c"], help="Experiment file")],
    output: Annotated[
        Path | None,
        cyclopts.Parameter(name=["--output", "-o"], help="Output directory"),
    ] = None,
    workers: Annotated[
        int | None,
        cyclopts.Parameter(name=["--workers", "-w"], help="Worker threads (0 = all CPUs)"),
    ] = None,
) -> None:
    """Run a full experiment and write every artifact.

    Examples:
        lpreg run -c config/experiments/signal1d.yaml
        lpreg run -c config/experiments/ring2d.yaml -o out/ring -w 8
    """
    experiment = load_experiment(config)
    report = ExperimentRunner(experiment, workers=workers).run(output)
    for name, method in report.methods.items():
        print(f"  {name:<10} l1={method.l1:.6g} l2={method.l2:.6g} lambda={method.lambda_used:.4g}")
    for name, gain in report.improvement.items():
        print(f"  vs {name:<7} l1 {100 * gain['l1']:+.1f}%  l2 {100 * gain['l2']:+.1f}%")
    print(f"Report: {Path(report.output_dir) / 'errors.json'}")


@app.command
def report(
    directory: Annotated[Path, cyclopts.Parameter(help="Experiment output directory")],
) -> None:
    """Recompute error metrics from stored arrays and print them as JSON.

    Examples:
        lpreg report output
    """
    summary = recompute_report(directory)
    print(msgspec.json.format(msgspec.json.encode(summary), indent=2).decode("utf-8"))


@app.command
def stability(
    config: Annotated[Path, cyclopts.Parameter(name=["--config", "-c"], help="Experiment file")],
    draws: Annotated[int, cyclopts.Parameter(name=["--draws", "-d"])] = 20,
    output: Annotated[
        Path,
        cyclopts.Parameter(name=["--output", "-o"], help="Output CSV file"),
    ] = Path("stability.csv"),
    workers: Annotated[
        int | None,
        cyclopts.Parameter(name=["--workers", "-w"], help="Worker threads (0 = all CPUs)"),
    ] = None,
) -> None:
    """Repeat the lambda-interval draw and tabulate the pooled maps per patch.

    Examples:
        lpreg stability -c config/experiments/signal1d.yaml --draws 20
    """
    experiment = load_experiment(config)
    runner = ExperimentRunner(experiment, workers=workers)
    problem = runner.prepare()
    result = pooling_distribution(
        problem.op,
        problem.y,
        experiment.design_hyper(),
        experiment.solver_config(),
        draws,
        problem.solver,
        runner.workers,
    )
    print(f"Created: {result.write_csv(output)}")


def execute_cli(argv: list[str] | None = None) -> int:
    """Parse ``argv``, run the command and return the exit status.

    Returns:
        0 on success, 1 on a library error, 2 on a usage error.
    """
    tokens = sys.argv[1:] if argv is None else argv
    try:
        command, bound, _ = app.parse_args(tokens, exit_on_error=False, print_error=True)
    except cyclopts.CycloptsError:
        app.help_print([])
        return 2
    try:
        configure_logging(get_config().log_level)
        command(*bound.args, **bound.kwargs)
    except LpRegError as e:
        print(f"Error: {e.message}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    """Entry point for the CLI."""
    sys.exit(execute_cli())


if __name__ == "__main__":
    main()
