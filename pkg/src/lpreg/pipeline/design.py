"""Exponent design: sample reconstructions through exponent assignment."""

from __future__ import annotations

import logging
from collections.abc import Sequence

import msgspec
import numpy as np

from lpreg.admm.normal import NormalSolver
from lpreg.admm.state import ExponentField
from lpreg.core.config import DesignHyper, SolverConfig
from lpreg.exponent.classify import ClassMap, assign_exponents, classify_patches
from lpreg.exponent.patches import PatchGrid, build_patch_grid
from lpreg.exponent.pooling import PoolingMap, average_pool, minmax_normalize, nghd_filter, variance_pool
from lpreg.exponent.schedule import lambda_schedule
from lpreg.exponent.stats import GradientStats, gradient_stats
from lpreg.operators.measurement import MeasurementOperator
from lpreg.operators.signal import Signal
from lpreg.pipeline.samples import sample_solves

logger = logging.getLogger(__name__)


class PoolingMaps(msgspec.Struct, frozen=True, eq=False):
    """Normalized statistics of one pair of sample sets."""

    var1n: PoolingMap
    var2n: PoolingMap
    filt1: PoolingMap
    filt2: PoolingMap
    avg1n: PoolingMap
    avg2n: PoolingMap

    def as_dict(self) -> dict[str, np.ndarray]:
        return {name: getattr(self, name).values for name in self.__struct_fields__}


class DesignResult(msgspec.Struct, frozen=True, eq=False):
    """Everything the exponent design produced.

    Attributes:
        exponents: Per-component exponent field.
        classes: Patch classes.
        stats: Mean gradients of both sample sets.
        grid: Patch cover.
        maps: Normalized pooling and filtered maps.
        schedule: λ values of the sample reconstructions.
        unconverged: λ values whose sample solve stopped at ``max_iter``,
            keyed by the sample exponent (1 or 2).
    """

    exponents: ExponentField
    classes: ClassMap
    stats: GradientStats
    grid: PatchGrid
    maps: PoolingMaps
    schedule: list[float]
    unconverged: dict[int, list[float]] = msgspec.field(default_factory=dict)


def pool_statistics(stats: GradientStats, grid: PatchGrid, hyper: DesignHyper) -> PoolingMaps:
    """Variance and average pooling, Min-Max normalization and filtering."""
    g1, g2 = stats.pooling_inputs()
    var1n = minmax_normalize(variance_pool(g1, grid))
    var2n = minmax_normalize(variance_pool(g2, grid))
    return PoolingMaps(
        var1n=var1n,
        var2n=var2n,
        filt1=nghd_filter(var1n, grid, hyper.n_nghd, hyper.nghd_mode),
        filt2=nghd_filter(var2n, grid, hyper.n_nghd, hyper.nghd_mode),
        avg1n=minmax_normalize(average_pool(g1, grid)),
        avg2n=minmax_normalize(average_pool(g2, grid)),
    )


def design_from_samples(
    samples_tv: Sequence[Signal],
    samples_tik: Sequence[Signal],
    hyper: DesignHyper,
    schedule: Sequence[float] = (),
    unconverged: dict[int, list[float]] | None = None,
) -> DesignResult:
    """Classify patches and assign exponents from given sample reconstructions."""
    stats = gradient_stats(samples_tv, samples_tik)
    grid = build_patch_grid(stats.g1.shape, hyper.patch_size)
    maps = pool_statistics(stats, grid, hyper)
    classes = classify_patches(maps.var1n, maps.var2n, maps.filt1, maps.filt2, hyper.eps_var)
    exponents = assign_exponents(classes, maps.avg1n, maps.avg2n, hyper.c, grid)
    return DesignResult(
        exponents=exponents,
        classes=classes,
        stats=stats,
        grid=grid,
        maps=maps,
        schedule=list(schedule),
        unconverged=dict(unconverged or {}),
    )


def design_exponents(
    op: MeasurementOperator,
    y: np.ndarray,
    hyper: DesignHyper,
    cfg: SolverConfig,
    solver: NormalSolver | None = None,
    workers: int | None = None,
    schedule: Sequence[float] | None = None,
) -> DesignResult:
    """Design the exponent field from p=1 and p=2 reconstructions of ``y``.

    Args:
        op: Measurement operator.
        y: Measurements.
        hyper: Design hyperparameters; ``hyper.seed`` drives the λ schedule.
        cfg: ADMM parameters (its ``lam`` is ignored).
        solver: Shared factorization for ``(op, cfg.rho)``; only used with a
            fixed penalty.
        workers: Thread count for the sample solves.
        schedule: Explicit λ values; drawn from ``hyper`` when omitted.
    """
    if solver is None and cfg.rho_mode == "fixed":
        solver = NormalSolver(op, cfg.rho)
    lambdas = list(schedule) if schedule is not None else lambda_schedule(hyper)
    logger.info(
        "Designing exponents from %d λ values in [%.3g, %.3g]",
        len(lambdas),
        min(lambdas),
        max(lambdas),
    )
    results = {p: sample_solves(op, y, lambdas, p, cfg, solver, workers) for p in (1, 2)}
    unconverged = {p: [r.lam for r in rs if not r.converged] for p, rs in results.items()}
    return design_from_samples(
        [r.u_hat for r in results[1]],
        [r.u_hat for r in results[2]],
        hyper,
        lambdas,
        {p: lams for p, lams in unconverged.items() if lams},
    )
