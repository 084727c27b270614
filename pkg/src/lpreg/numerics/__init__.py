"""Scalar root-finding."""

from lpreg.numerics.roots import (
    DEFAULT_ROOT_CONFIG,
    RootConfig,
    RootResult,
    chandrupatla_root,
    chandrupatla_roots,
)

__all__ = [
    "RootConfig",
    "RootResult",
    "DEFAULT_ROOT_CONFIG",
    "chandrupatla_root",
    "chandrupatla_roots",
]
