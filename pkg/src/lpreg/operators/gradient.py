"""Forward-difference gradient operator F (= D) and its adjoint.

The last difference along each axis is zero (replicate boundary), so F maps
N components to M = N (1D) or M = 2N (2D) entries and annihilates constants.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from lpreg.core.exceptions import DimensionError
from lpreg.operators.signal import (
    GradientField,
    Shape,
    Signal,
    as_array,
    component_count,
    gradient_length,
)


def _diff(u: np.ndarray, axis: int) -> np.ndarray:
    out = np.zeros_like(u)
    if u.shape[axis] > 1:
        index = [slice(None)] * u.ndim
        index[axis] = slice(0, -1)
        out[tuple(index)] = np.diff(u, axis=axis)
    return out


def _diff_adjoint(v: np.ndarray, axis: int) -> np.ndarray:
    # Transpose of _diff: the zeroed last row contributes nothing.
    n = v.shape[axis]
    head = [slice(None)] * v.ndim
    head[axis] = slice(0, n - 1)
    tail = [slice(None)] * v.ndim
    tail[axis] = slice(1, n)
    out = np.zeros_like(v)
    out[tuple(head)] -= v[tuple(head)]
    out[tuple(tail)] += v[tuple(head)]
    return out


def grad(u: np.ndarray, shape: Shape) -> np.ndarray:
    """Apply F to an array with N entries; returns the flat length-M field."""
    arr = as_array(u, shape)
    if len(shape) == 1:
        return _diff(arr, 0)
    return np.concatenate([_diff(arr, 1).reshape(-1), _diff(arr, 0).reshape(-1)])


def grad_adjoint(v: np.ndarray, shape: Shape) -> np.ndarray:
    """Apply Fᵀ to a flat length-M vector; returns a signal-shaped array."""
    v = np.asarray(v, dtype=np.float64)
    expected = gradient_length(shape)
    if v.ndim != 1 or v.size != expected:
        raise DimensionError(
            f"Gradient vector for shape {shape} needs {expected} entries, got {v.size}",
            details={"expected": expected, "actual": int(v.size)},
        )
    if len(shape) == 1:
        return _diff_adjoint(v, 0)
    n = component_count(shape)
    vx = v[:n].reshape(shape)
    vy = v[n:].reshape(shape)
    return _diff_adjoint(vx, 1) + _diff_adjoint(vy, 0)


def gradient_apply(u: Signal) -> GradientField:
    """Forward-difference gradient of a signal."""
    return GradientField(values=grad(u.values, u.shape), shape=u.shape)


def gradient_adjoint(v: GradientField) -> np.ndarray:
    """Exact transpose of :func:`gradient_apply`."""
    return grad_adjoint(v.values, v.shape)


def difference_matrix(n: int) -> sp.csr_matrix:
    """Sparse n×n forward-difference matrix with a zero last row."""
    main = -np.ones(n)
    main[-1] = 0.0
    upper = np.ones(max(n - 1, 0))
    return sp.diags([main, upper], [0, 1], shape=(n, n), format="csr")


def gradient_matrix(shape: Shape) -> sp.csr_matrix:
    """Sparse M×N matrix of F for row-major signals."""
    if len(shape) == 1:
        return difference_matrix(shape[0])
    rows, cols = shape
    dx = sp.kron(sp.identity(rows), difference_matrix(cols))
    dy = sp.kron(difference_matrix(rows), sp.identity(cols))
    return sp.vstack([dx, dy], format="csr")
