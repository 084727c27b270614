"""Experiment orchestration."""

from lpreg.pipeline.artifacts import ArtifactWriter
from lpreg.pipeline.design import (
    DesignResult,
    PoolingMaps,
    design_exponents,
    design_from_samples,
    pool_statistics,
)
from lpreg.pipeline.experiment import (
    ExperimentReport,
    ExperimentRunner,
    MethodReport,
    Problem,
    recompute_report,
    run_experiment,
)
from lpreg.pipeline.samples import (
    reconstruct_samples,
    resolve_workers,
    sample_solves,
    solve_lambdas,
)
from lpreg.pipeline.stability import MapSpread, StabilityReport, pooling_distribution

__all__ = [
    "reconstruct_samples",
    "sample_solves",
    "solve_lambdas",
    "resolve_workers",
    "DesignResult",
    "PoolingMaps",
    "pool_statistics",
    "design_from_samples",
    "design_exponents",
    "MapSpread",
    "StabilityReport",
    "pooling_distribution",
    "ArtifactWriter",
    "ExperimentReport",
    "ExperimentRunner",
    "MethodReport",
    "Problem",
    "run_experiment",
    "recompute_report",
]
