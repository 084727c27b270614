"""Exponent design from multiple homogeneous reconstructions."""

from lpreg.exponent.classify import (
    CLASS_CODES,
    CLASS_NAMES,
    ClassMap,
    PatchClass,
    assign_exponents,
    class_fractions,
    classify_patches,
    exponent_curve,
    patch_exponents,
    split_exponents,
)
from lpreg.exponent.patches import PatchGrid, build_patch_grid, expand_patch_values
from lpreg.exponent.pooling import (
    NghdMode,
    PoolingMap,
    average_pool,
    minmax_normalize,
    nghd_filter,
    variance_pool,
)
from lpreg.exponent.schedule import draw_interval, lambda_schedule, log_spaced
from lpreg.exponent.stats import GradientStats, gradient_stats

__all__ = [
    "PatchGrid",
    "build_patch_grid",
    "expand_patch_values",
    "PoolingMap",
    "NghdMode",
    "variance_pool",
    "average_pool",
    "minmax_normalize",
    "nghd_filter",
    "ClassMap",
    "PatchClass",
    "CLASS_CODES",
    "CLASS_NAMES",
    "classify_patches",
    "exponent_curve",
    "patch_exponents",
    "assign_exponents",
    "split_exponents",
    "class_fractions",
    "draw_interval",
    "log_spaced",
    "lambda_schedule",
    "GradientStats",
    "gradient_stats",
]
