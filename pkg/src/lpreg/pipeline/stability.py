"""Sensitivity of the pooled statistics to the random λ interval."""

from __future__ import annotations

import logging
from pathlib import Path

import msgspec
import numpy as np

from lpreg.admm.normal import NormalSolver
from lpreg.core.config import DesignHyper, SolverConfig
from lpreg.core.exceptions import ImageIOError, InvalidInputError
from lpreg.exponent.classify import CLASS_CODES, PatchClass
from lpreg.exponent.schedule import draw_interval, log_spaced
from lpreg.operators.measurement import MeasurementOperator
from lpreg.pipeline.design import design_exponents

logger = logging.getLogger(__name__)


class MapSpread(msgspec.Struct, frozen=True, eq=False):
    """Per-patch mean, minimum and maximum of one map across draws."""

    mean: np.ndarray
    low: np.ndarray
    high: np.ndarray


class StabilityReport(msgspec.Struct, frozen=True, eq=False):
    """Pooled maps and classes over repeated λ-interval draws.

    Attributes:
        intervals: ``(λ_a, λ_b)`` of every draw.
        spreads: Spread of ``var1n``, ``var2n``, ``avg1n`` and ``avg2n``.
        class_codes: Class codes, one row per draw.
    """

    intervals: list[tuple[float, float]]
    spreads: dict[str, MapSpread]
    class_codes: np.ndarray

    def agreement(self, patches: list[int], name: PatchClass = "discontinuity") -> float:
        """Fraction of draws in which every patch in ``patches`` has class ``name``."""
        hits = np.all(self.class_codes[:, patches] == CLASS_CODES[name], axis=1)
        return float(hits.mean())

    def write_csv(self, path: Path | str) -> Path:
        """One row per patch: mean/min/max of each map."""
        path = Path(path)
        names = sorted(self.spreads)
        columns = [np.arange(self.class_codes.shape[1])]
        header = ["patch"]
        for name in names:
            spread = self.spreads[name]
            columns += [spread.mean, spread.low, spread.high]
            header += [f"{name}_mean", f"{name}_min", f"{name}_max"]
        try:
            np.savetxt(
                path,
                np.column_stack(columns),
                fmt=["%d"] + ["%.17g"] * (len(columns) - 1),
                delimiter=",",
                header=",".join(header),
                comments="",
            )
        except OSError as e:
            raise ImageIOError(f"Cannot write stability table {path}: {e}") from e
        return path


_SPREAD_MAPS = ("var1n", "var2n", "avg1n", "avg2n")


def pooling_distribution(
    op: MeasurementOperator,
    y: np.ndarray,
    hyper: DesignHyper,
    cfg: SolverConfig,
    draws: int,
    solver: NormalSolver | None = None,
    workers: int | None = None,
) -> StabilityReport:
    """Repeat the exponent design for ``draws`` λ intervals from one seeded stream.

    Raises:
        InvalidInputError: If ``draws < 1``.
    """
    if draws < 1:
        raise InvalidInputError(f"draws must be at least 1, got {draws}")
    if solver is None and cfg.rho_mode == "fixed":
        solver = NormalSolver(op, cfg.rho)
    rng = np.random.default_rng(hyper.seed)

    intervals: list[tuple[float, float]] = []
    maps: dict[str, list[np.ndarray]] = {name: [] for name in _SPREAD_MAPS}
    codes: list[np.ndarray] = []
    for draw in range(draws):
        lam_a, lam_b = draw_interval(hyper, rng)
        intervals.append((lam_a, lam_b))
        logger.info("Stability draw %d/%d: λ in [%.3g, %.3g]", draw + 1, draws, lam_a, lam_b)
        schedule = log_spaced(lam_a, lam_b, hyper.samples)
        design = design_exponents(op, y, hyper, cfg, solver, workers, schedule)
        values = design.maps.as_dict()
        for name in _SPREAD_MAPS:
            maps[name].append(values[name])
        codes.append(np.asarray(design.classes.codes))

    spreads = {}
    for name, rows in maps.items():
        stack = np.stack(rows)
        spreads[name] = MapSpread(mean=stack.mean(axis=0), low=stack.min(axis=0), high=stack.max(axis=0))
    return StabilityReport(intervals=intervals, spreads=spreads, class_codes=np.stack(codes))
