"""Chandrupatla's bracketing root-finder.

Each step either takes an inverse-quadratic interpolation through the last
three points or, when the interpolant would not be monotone on the bracket,
bisects. The scalar and array versions share the same update rules; the
array version advances every bracket in lock-step and freezes the ones that
have converged.
"""

from __future__ import annotations

import math
from collections.abc import Callable

import msgspec
import numpy as np

from lpreg.core.exceptions import BracketError, ConfigError, ConvergenceError


class RootConfig(msgspec.Struct, frozen=True):
    """Stopping rules.

    Attributes:
        tol_x: Absolute bracket-width tolerance. None selects
            ``1e-14 * max(1, |a|, |b|)`` per bracket.
        tol_f: Absolute residual tolerance.
        max_iter: Iteration budget.
    """

    tol_x: float | None = None
    tol_f: float = 1e-12
    max_iter: int = 100

    def __post_init__(self) -> None:
        if self.tol_x is not None and not self.tol_x > 0:
            raise ConfigError(f"tol_x must be positive, got {self.tol_x}")
        if not self.tol_f >= 0:
            raise ConfigError(f"tol_f must be non-negative, got {self.tol_f}")
        if self.max_iter < 1:
            raise ConfigError(f"max_iter must be at least 1, got {self.max_iter}")


DEFAULT_ROOT_CONFIG = RootConfig()


class RootResult(msgspec.Struct, frozen=True):
    """Scalar root and the number of iterations it took."""

    root: float
    iterations: int


def _default_tol_x(a: float | np.ndarray, b: float | np.ndarray) -> float | np.ndarray:
    return 1e-14 * np.maximum(1.0, np.maximum(np.abs(a), np.abs(b)))


def _iqi_fraction(a, b, c, fa, fb, fc):
    """Step fraction along ``[a, b]`` of the inverse quadratic through the three points."""
    return fa / (fb - fa) * fc / (fb - fc) + (c - a) / (b - a) * fa / (fc - fa) * fb / (fc - fb)


def chandrupatla_root(
    f: Callable[[float], float],
    a: float,
    b: float,
    cfg: RootConfig = DEFAULT_ROOT_CONFIG,
    full_output: bool = False,
) -> float | RootResult:
    """Find a root of ``f`` inside ``[a, b]``.

    Args:
        f: Continuous scalar function with ``f(a)·f(b) <= 0``.
        a: One end of the bracket.
        b: Other end of the bracket.
        cfg: Stopping rules.
        full_output: Return a :class:`RootResult` instead of the bare root.

    Returns:
        A point of the bracket with ``|f| <= tol_f`` or bracketed to within
        ``tol_x``.

    Raises:
        BracketError: If ``f(a)`` and ``f(b)`` have the same strict sign.
        ConvergenceError: If ``max_iter`` steps do not converge; ``best``
            holds the best iterate.
    """
    a, b = float(a), float(b)
    fa, fb = float(f(a)), float(f(b))
    if math.isnan(fa) or math.isnan(fb) or fa * fb > 0:
        raise BracketError(
            f"f(a) and f(b) must differ in sign: f({a})={fa}, f({b})={fb}",
            details={"a": a, "b": b, "fa": fa, "fb": fb},
        )
    tol_x = cfg.tol_x if cfg.tol_x is not None else float(_default_tol_x(a, b))

    def finish(x: float, iterations: int) -> float | RootResult:
        return RootResult(root=x, iterations=iterations) if full_output else x

    xm, fm = (a, fa) if abs(fa) < abs(fb) else (b, fb)
    if abs(fm) <= cfg.tol_f or abs(b - a) <= tol_x:
        return finish(xm, 0)

    c, fc = a, fa
    t = 0.5
    for iteration in range(1, cfg.max_iter + 1):
        xt = a + t * (b - a)
        ft = float(f(xt))
        if math.copysign(1.0, ft) == math.copysign(1.0, fa):
            c, fc = a, fa
        else:
            c, fc = b, fb
            b, fb = a, fa
        a, fa = xt, ft

        xm, fm = (a, fa) if abs(fa) < abs(fb) else (b, fb)
        width = abs(b - a)
        if abs(fm) <= cfg.tol_f or width <= tol_x:
            return finish(xm, iteration)

        tl = 0.5 * tol_x / width
        try:
            xi = (a - b) / (c - b)
            phi = (fa - fb) / (fc - fb)
            iqi = phi * phi < xi and (1.0 - phi) ** 2 < 1.0 - xi
            t = _iqi_fraction(a, b, c, fa, fb, fc) if iqi else 0.5
        except ZeroDivisionError:
            t = 0.5
        t = min(1.0 - tl, max(tl, t))

    raise ConvergenceError(
        f"Root not found within {cfg.max_iter} iterations",
        best=xm,
        details={"bracket": (min(a, b), max(a, b)), "residual": fm},
    )


def chandrupatla_roots(
    f: Callable[[np.ndarray], np.ndarray],
    a: np.ndarray | float,
    b: np.ndarray | float,
    cfg: RootConfig = DEFAULT_ROOT_CONFIG,
) -> np.ndarray:
    """Element-wise :func:`chandrupatla_root` over arrays of brackets.

    ``f`` is called with whole arrays shaped like the broadcast of ``a`` and
    ``b`` and must act element-wise. Converged entries are re-evaluated at
    their current best point and never move again.

    Raises:
        BracketError: If any bracket is invalid.
        ConvergenceError: If some bracket does not converge; ``best`` holds
            the best iterates of all entries.
    """
    a, b = np.broadcast_arrays(np.asarray(a, dtype=np.float64), np.asarray(b, dtype=np.float64))
    a = a.copy()
    b = b.copy()
    fa = np.asarray(f(a), dtype=np.float64)
    fb = np.asarray(f(b), dtype=np.float64)
    bad = np.isnan(fa) | np.isnan(fb) | (fa * fb > 0)
    if bad.any():
        first = int(np.flatnonzero(bad.ravel())[0])
        raise BracketError(
            f"{int(bad.sum())} bracket(s) without a sign change",
            details={"first_index": first},
        )
    tol_x = np.full(a.shape, cfg.tol_x) if cfg.tol_x is not None else _default_tol_x(a, b)

    closer = np.abs(fa) < np.abs(fb)
    xm = np.where(closer, a, b)
    fm = np.where(closer, fa, fb)
    done = (np.abs(fm) <= cfg.tol_f) | (np.abs(b - a) <= tol_x)

    c = a.copy()
    fc = fa.copy()
    t = np.full(a.shape, 0.5)
    with np.errstate(divide="ignore", invalid="ignore"):
        for _ in range(cfg.max_iter):
            active = ~done
            if not active.any():
                return xm
            xt = np.where(active, a + t * (b - a), xm)
            ft = np.asarray(f(xt), dtype=np.float64)

            same = np.signbit(ft) == np.signbit(fa)
            new_c = np.where(same, a, b)
            new_fc = np.where(same, fa, fb)
            new_b = np.where(same, b, a)
            new_fb = np.where(same, fb, fa)
            c = np.where(active, new_c, c)
            fc = np.where(active, new_fc, fc)
            b = np.where(active, new_b, b)
            fb = np.where(active, new_fb, fb)
            a = np.where(active, xt, a)
            fa = np.where(active, ft, fa)

            closer = np.abs(fa) < np.abs(fb)
            xm = np.where(active, np.where(closer, a, b), xm)
            fm = np.where(active, np.where(closer, fa, fb), fm)
            width = np.abs(b - a)
            done |= (np.abs(fm) <= cfg.tol_f) | (width <= tol_x)

            tl = 0.5 * tol_x / width
            xi = (a - b) / (c - b)
            phi = (fa - fb) / (fc - fb)
            iqi = (phi * phi < xi) & ((1.0 - phi) ** 2 < 1.0 - xi)
            t_iqi = _iqi_fraction(a, b, c, fa, fb, fc)
            t = np.clip(np.where(iqi, t_iqi, 0.5), tl, 1.0 - tl)
            t = np.where(np.isfinite(t), t, 0.5)

    if (~done).any():
        raise ConvergenceError(
            f"{int((~done).sum())} root(s) not found within {cfg.max_iter} iterations",
            best=xm,
        )
    return xm
