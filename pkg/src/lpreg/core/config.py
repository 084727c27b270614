"""Configuration management for lpreg."""

from __future__ import annotations

import math
import os
from functools import lru_cache
from pathlib import Path
from typing import Any, Literal

import msgspec
import yaml

from lpreg.core.exceptions import ConfigError


def log_grid(lo: float, hi: float, count: int) -> list[float]:
    """Return ``count`` logarithmically equispaced values on ``[lo, hi]``."""
    if count == 1:
        return [float(lo)]
    a, b = math.log10(lo), math.log10(hi)
    return [10.0 ** (a + (b - a) * i / (count - 1)) for i in range(count)]


class SolverConfig(msgspec.Struct, frozen=True, forbid_unknown_fields=True):
    """ADMM parameters.

    Attributes:
        rho: Augmented Lagrangian penalty, or its factor on λ when
            ``rho_mode`` is ``"lambda"``.
        lam: Regularization weight λ.
        max_iter: Iteration cap; exhaustion is reported, not raised.
        tol_primal: Primal tolerance, scaled by √M in the stopping rule.
        tol_dual: Dual tolerance, scaled by √M in the stopping rule.
        rho_mode: ``fixed`` uses ``rho`` as is; ``lambda`` uses ``rho·λ``, which
            keeps the v-step contraction independent of λ.
    """

    rho: float = 1.0
    lam: float = 1.0
    max_iter: int = 2000
    tol_primal: float = 1e-6
    tol_dual: float = 1e-6
    rho_mode: Literal["fixed", "lambda"] = "fixed"

    @property
    def penalty(self) -> float:
        """Penalty ρ used by the iteration."""
        return self.rho * self.lam if self.rho_mode == "lambda" else self.rho

    def __post_init__(self) -> None:
        for name in ("rho", "lam", "tol_primal", "tol_dual"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ConfigError(f"Solver parameter {name} must be positive, got {value}")
        if self.max_iter < 1:
            raise ConfigError(f"max_iter must be at least 1, got {self.max_iter}")


class DesignHyper(msgspec.Struct, frozen=True, forbid_unknown_fields=True):
    """Hyperparameters of the exponent design.

    Attributes:
        patch_size: Patch edge K.
        eps_var: Smooth threshold on normalized variance, in (0, 1).
        n_nghd: Directional neighborhood reach.
        c: Exponent-curve constant of ``2 - exp(-c a)``.
        samples: Number C of λ values per regularization.
        lambda_lo: Lower bound of the λ sampling range.
        lambda_hi: Upper bound of the λ sampling range.
        ratio_lo: Smallest allowed λ_b / λ_a.
        ratio_hi: Largest allowed λ_b / λ_a.
        seed: Seed of the λ-interval draw.
        nghd_mode: 1D neighborhood reading, ``joint`` (one max over both sides)
            or ``per-side`` (min of left and right maxima).
    """

    patch_size: int = 5
    eps_var: float = 1e-2
    n_nghd: int = 3
    c: float = 27.0
    samples: int = 200
    lambda_lo: float = 1e-4
    lambda_hi: float = 1e4
    ratio_lo: float = 1e2
    ratio_hi: float = 1e4
    seed: int = 0
    nghd_mode: Literal["joint", "per-side"] = "joint"

    def __post_init__(self) -> None:
        if self.patch_size < 1:
            raise ConfigError(f"patch_size must be at least 1, got {self.patch_size}")
        if not 0.0 < self.eps_var < 1.0:
            raise ConfigError(f"eps_var must lie in (0, 1), got {self.eps_var}")
        if self.n_nghd < 1:
            raise ConfigError(f"n_nghd must be at least 1, got {self.n_nghd}")
        if not self.c > 0:
            raise ConfigError(f"Exponent constant c must be positive, got {self.c}")
        if self.samples < 2:
            raise ConfigError(f"samples must be at least 2, got {self.samples}")
        if not 0.0 < self.lambda_lo < self.lambda_hi:
            raise ConfigError(
                "lambda bounds must satisfy 0 < lambda_lo < lambda_hi",
                details={"lambda_lo": self.lambda_lo, "lambda_hi": self.lambda_hi},
            )
        if not 1.0 <= self.ratio_lo <= self.ratio_hi:
            raise ConfigError("ratio bounds must satisfy 1 <= ratio_lo <= ratio_hi")
        if self.ratio_hi > self.lambda_hi / self.lambda_lo:
            raise ConfigError("ratio_hi exceeds the span of [lambda_lo, lambda_hi]")


class ExperimentConfig(msgspec.Struct, frozen=True, forbid_unknown_fields=True):
    """Flat description of one reconstruction experiment.

    Every key maps one-to-one onto a line of the experiment YAML file.
    """

    source: Literal["builtin-1d", "builtin-2d", "image"] = "builtin-1d"
    size: int = 200
    image_path: str | None = None
    image_size: int | None = None

    # measurement
    mask_path: str | None = None
    selection: Literal["lowest", "stride", "identity"] = "lowest"
    fraction: float = 0.2
    stride: int = 3
    axis: Literal["x", "y"] = "x"
    sigma: float = 0.0
    seed: int = 0

    # exponent design
    patch_size: int = 5
    eps_var: float = 1e-2
    nghd_size: int = 3
    nghd_mode: Literal["joint", "per-side"] = "joint"
    exponent_c: float = 27.0
    samples: int = 200
    lambda_lo: float = 1e-4
    lambda_hi: float = 1e4
    ratio_lo: float = 1e2
    ratio_hi: float = 1e4
    design_seed: int = 0

    # solver
    rho: float = 1.0
    rho_mode: Literal["fixed", "lambda"] = "fixed"
    max_iter: int = 2000
    tol_primal: float = 1e-6
    tol_dual: float = 1e-6

    # λ grids
    final_lambdas: list[float] = msgspec.field(default_factory=lambda: log_grid(1e-3, 1e1, 8))
    baseline_lambdas_p1: list[float] = msgspec.field(
        default_factory=lambda: log_grid(1e-4, 1e4, 20)
    )
    baseline_lambdas_p2: list[float] = msgspec.field(
        default_factory=lambda: log_grid(1e-4, 1e4, 20)
    )

    # 1D split-exponent comparison boundary (x coordinate); None disables it
    split_at: float | None = 0.0

    output_dir: str | None = None
    workers: int | None = None

    def design_hyper(self) -> DesignHyper:
        """Derive the exponent-design hyperparameters."""
        return DesignHyper(
            patch_size=self.patch_size,
            eps_var=self.eps_var,
            n_nghd=self.nghd_size,
            c=self.exponent_c,
            samples=self.samples,
            lambda_lo=self.lambda_lo,
            lambda_hi=self.lambda_hi,
            ratio_lo=self.ratio_lo,
            ratio_hi=self.ratio_hi,
            seed=self.design_seed,
            nghd_mode=self.nghd_mode,
        )

    def solver_config(self, lam: float = 1.0) -> SolverConfig:
        """Derive the ADMM configuration for a given λ."""
        return SolverConfig(
            rho=self.rho,
            rho_mode=self.rho_mode,
            lam=lam,
            max_iter=self.max_iter,
            tol_primal=self.tol_primal,
            tol_dual=self.tol_dual,
        )

    def validate(self) -> None:
        """Check cross-field constraints and referenced files.

        Raises:
            ConfigError: If the configuration cannot describe a runnable experiment.
        """
        if self.source == "image":
            if not self.image_path:
                raise ConfigError("source 'image' requires image_path")
            if not Path(self.image_path).exists():
                raise ConfigError(f"Image file not found: {self.image_path}")
        if self.mask_path and not Path(self.mask_path).exists():
            raise ConfigError(f"Mask file not found: {self.mask_path}")
        for name in ("final_lambdas", "baseline_lambdas_p1", "baseline_lambdas_p2"):
            grid = getattr(self, name)
            if not grid:
                raise ConfigError(f"{name} must not be empty")
            if any(not (lam > 0) for lam in grid):
                raise ConfigError(f"{name} must contain positive values only")
        if self.sigma < 0:
            raise ConfigError(f"sigma must be non-negative, got {self.sigma}")
        if not 0.0 < self.fraction <= 1.0:
            raise ConfigError(f"fraction must lie in (0, 1], got {self.fraction}")
        if self.stride < 1:
            raise ConfigError(f"stride must be at least 1, got {self.stride}")
        # Struct invariants of the derived views
        self.design_hyper()
        self.solver_config()


class AppConfig(msgspec.Struct, frozen=True):
    """Process-wide settings.

    Attributes:
        workers: Worker threads for independent solves (0 selects the CPU count).
        dense_limit: Largest N assembled as a dense normal matrix.
        log_level: Logging level name.
        output_dir: Default artifact directory.
    """

    workers: int = 0
    dense_limit: int = 4096
    log_level: str = "info"
    output_dir: str = "output"


def _find_config_file() -> Path | None:
    """Find configuration file in standard locations."""
    locations = [
        Path("config/config.yaml"),
        Path("config.yaml"),
        Path.home() / ".config" / "lpreg" / "config.yaml",
        Path("/etc/lpreg/config.yaml"),
    ]

    for path in locations:
        if path.exists():
            return path

    return None


def _load_yaml_config(path: Path) -> dict[str, Any]:
    """Load configuration from YAML file."""
    try:
        with open(path) as f:
            data = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise ConfigError(f"Invalid YAML in config file: {e}") from e
    except OSError as e:
        raise ConfigError(f"Cannot read config file: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"Config file must contain a mapping: {path}")
    return data


def _merge_env_vars(config: dict[str, Any]) -> dict[str, Any]:
    """Merge environment variables into configuration."""
    env_mappings = {
        "LPREG_WORKERS": ("workers", int),
        "LPREG_DENSE_LIMIT": ("dense_limit", int),
        "LPREG_LOG_LEVEL": ("log_level", str),
        "LPREG_OUTPUT_DIR": ("output_dir", str),
    }

    for env_var, (key, cast) in env_mappings.items():
        value = os.environ.get(env_var)
        if value is not None:
            try:
                config[key] = cast(value)
            except ValueError as e:
                raise ConfigError(f"Invalid value for {env_var}: {value!r}") from e

    return config


def load_config(config_path: Path | str | None = None) -> AppConfig:
    """Load application settings from file and environment variables.

    Args:
        config_path: Optional path to configuration file.
                    If not provided, searches standard locations.

    Returns:
        AppConfig with merged settings.
    """
    config_data: dict[str, Any] = {}

    if config_path:
        path = Path(config_path)
        if not path.exists():
            raise ConfigError(f"Config file not found: {path}")
        config_data = _load_yaml_config(path)
    else:
        path = _find_config_file()
        if path:
            config_data = _load_yaml_config(path)

    config_data = _merge_env_vars(config_data)

    try:
        return msgspec.convert(config_data, AppConfig, strict=False)
    except msgspec.ValidationError as e:
        raise ConfigError(f"Invalid configuration: {e}") from e


@lru_cache(maxsize=1)
def get_config() -> AppConfig:
    """Get cached configuration instance."""
    return load_config()


_PATH_KEYS = ("image_path", "mask_path", "output_dir")


def load_experiment(path: Path | str, overrides: dict[str, Any] | None = None) -> ExperimentConfig:
    """Load a flat experiment description.

    Relative paths inside the file are resolved against the file's directory.

    Args:
        path: YAML file with one ``key: value`` pair per line.
        overrides: Keys replacing values from the file (CLI flags).

    Returns:
        Validated ExperimentConfig.
    """
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"Experiment file not found: {path}")
    data = _load_yaml_config(path)
    for key in _PATH_KEYS:
        value = data.get(key)
        if isinstance(value, str) and not Path(value).is_absolute():
            data[key] = str((path.parent / value).resolve())
    if overrides:
        data.update({k: v for k, v in overrides.items() if v is not None})
    try:
        config = msgspec.convert(data, ExperimentConfig, strict=False)
    except msgspec.ValidationError as e:
        raise ConfigError(f"Invalid experiment file {path}: {e}") from e
    config.validate()
    return config


def echo_experiment(config: ExperimentConfig) -> str:
    """Render the effective experiment as YAML (sorted keys, stable output)."""
    return yaml.safe_dump(msgspec.to_builtins(config), sort_keys=True)
