"""Core module for lpreg."""

from lpreg.core.config import (
    AppConfig,
    DesignHyper,
    ExperimentConfig,
    SolverConfig,
    get_config,
    load_config,
    load_experiment,
)
from lpreg.core.exceptions import (
    BracketError,
    ConfigError,
    ConvergenceError,
    DimensionError,
    ImageIOError,
    InvalidInputError,
    InvalidSizeError,
    LpRegError,
    SelectionError,
    SingularSystemError,
    StageError,
)
from lpreg.core.log import configure_logging

__all__ = [
    "AppConfig",
    "DesignHyper",
    "ExperimentConfig",
    "SolverConfig",
    "get_config",
    "load_config",
    "load_experiment",
    "configure_logging",
    "LpRegError",
    "DimensionError",
    "SelectionError",
    "InvalidSizeError",
    "InvalidInputError",
    "SingularSystemError",
    "BracketError",
    "ConvergenceError",
    "ConfigError",
    "ImageIOError",
    "StageError",
]
