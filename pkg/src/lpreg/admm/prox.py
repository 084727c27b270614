"""Proximal maps of ``|x|^p`` and their per-pixel composition with the norm.

For ``p ∈ (1, 2]`` the scalar prox at ``q >= 0`` is the zero of
``h(x) = p·x^(p-1) + ρ(x - q)`` on ``[0, q]``: ``h(0) = -ρq <= 0`` and
``h(q) = p·q^(p-1) >= 0``, so the bracket needs no search.
"""

from __future__ import annotations

import numpy as np

from lpreg.admm.state import ExponentField
from lpreg.core.exceptions import DimensionError, InvalidInputError
from lpreg.numerics.roots import DEFAULT_ROOT_CONFIG, RootConfig, chandrupatla_root, chandrupatla_roots
from lpreg.operators.signal import GradientField, Shape, component_count, pixel_norms


def shrink(kappa: float, q: float | np.ndarray) -> float | np.ndarray:
    """Soft thresholding ``sgn(q)·max(|q| - κ, 0)``."""
    if kappa < 0:
        raise InvalidInputError(f"kappa must be non-negative, got {kappa}")
    out = np.sign(q) * np.maximum(np.abs(q) - kappa, 0.0)
    return float(out) if np.ndim(out) == 0 else out


def h_residual(p: float | np.ndarray, rho: float, q: float | np.ndarray, x: float | np.ndarray):
    """Optimality residual ``p·x^(p-1) + ρ(x - q)`` of the scalar prox (``x >= 0``)."""
    return p * np.power(x, p - 1.0) + rho * (x - q)


def prox_scalar(p: float, rho: float, q: float, cfg: RootConfig = DEFAULT_ROOT_CONFIG) -> float:
    """Minimizer of ``|x|^p + (ρ/2)(x - q)²`` for ``q >= 0``.

    ``p = 1`` is shrinkage by ``1/ρ`` and ``p = 2`` has the closed form
    ``ρq / (2 + ρ)``; other exponents are root-found.

    Raises:
        InvalidInputError: If ``p ∉ [1, 2]``, ``ρ <= 0`` or ``q < 0``.
        ConvergenceError: From the root-finder.
    """
    if not 1.0 <= p <= 2.0:
        raise InvalidInputError(f"p must lie in [1, 2], got {p}")
    if not rho > 0:
        raise InvalidInputError(f"rho must be positive, got {rho}")
    if not q >= 0:
        raise InvalidInputError(f"q must be non-negative, got {q}")
    if p == 1.0:
        return shrink(1.0 / rho, q)
    if p == 2.0:
        return rho * q / (2.0 + rho)
    if q == 0:
        return 0.0
    return chandrupatla_root(lambda x: float(h_residual(p, rho, q, x)), 0.0, q, cfg)


def prox_norms(
    p: np.ndarray, rho: float, q: np.ndarray, cfg: RootConfig = DEFAULT_ROOT_CONFIG
) -> np.ndarray:
    """Vectorized :func:`prox_scalar` over matching arrays ``p`` and ``q >= 0``."""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    out = np.zeros_like(q)

    l1 = p == 1.0
    out[l1] = np.maximum(q[l1] - 1.0 / rho, 0.0)
    l2 = p == 2.0
    out[l2] = rho * q[l2] / (2.0 + rho)

    rest = ~(l1 | l2) & (q > 0)
    if rest.any():
        pr = p[rest]
        qr = q[rest]
        out[rest] = chandrupatla_roots(lambda x: h_residual(pr, rho, qr, x), 0.0, qr, cfg)
    return out


def block_prox(
    values: np.ndarray, shape: Shape, p: np.ndarray, rho: float, cfg: RootConfig
) -> np.ndarray:
    """Norm-composition prox on a flat stacked gradient vector."""
    norms = pixel_norms(values, shape)
    shrunk = prox_norms(p, rho, norms, cfg)
    with np.errstate(divide="ignore", invalid="ignore"):
        scale = np.where(norms > 0, shrunk / norms, 0.0)
    return values * np.tile(scale, len(shape))


def v_update(
    target: GradientField,
    p: ExponentField | np.ndarray,
    rho_over_lambda: float,
    cfg: RootConfig = DEFAULT_ROOT_CONFIG,
) -> GradientField:
    """Per-pixel prox of ``Σ |v_i|^{p_i}`` with parameter ``rho_over_lambda``.

    Each block ``x_i`` (scalar in 1D, ``(D_x, D_y)`` pair in 2D) maps to
    ``prox_scalar(p_i, ρ/λ, ‖x_i‖)·x_i/‖x_i‖``; zero blocks stay zero.
    """
    if not rho_over_lambda > 0:
        raise InvalidInputError(f"rho_over_lambda must be positive, got {rho_over_lambda}")
    exponents = p.per_component if isinstance(p, ExponentField) else np.asarray(p, dtype=np.float64)
    n = component_count(target.shape)
    if exponents.shape != (n,):
        raise DimensionError(
            f"Exponent field needs {n} entries, got {exponents.shape}",
            details={"expected": n, "actual": exponents.shape},
        )
    values = block_prox(target.values, target.shape, exponents, rho_over_lambda, cfg)
    return GradientField(values=values, shape=target.shape)
