"""Linear measurement operators A with exact adjoints.

Partial-Fourier operators use the unnormalized forward DFT
``û_k = Σ_n u_n exp(-2πi k n / N)`` (``numpy.fft`` default) and stack the real
and imaginary parts of each selected coefficient as consecutive rows
``(Re k₁, Im k₁, Re k₂, Im k₂, ...)``. Noise levels are expressed in that
scale.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import ClassVar, Literal

import numpy as np
import scipy.sparse as sp

from lpreg.core.exceptions import DimensionError, SelectionError
from lpreg.operators.signal import Shape, Signal, as_array, component_count, normalize_shape

OperatorKind = Literal["partial-fourier", "identity", "dense"]


class MeasurementOperator(ABC):
    """Real linear map A: ℝ^N → ℝ^m acting on signals of a fixed shape.

    Subclasses are immutable after construction and safe to share between
    threads.
    """

    kind: ClassVar[OperatorKind]

    def __init__(self, signal_shape: Shape) -> None:
        self._shape = normalize_shape(signal_shape)

    @property
    def signal_shape(self) -> Shape:
        return self._shape

    @property
    def n(self) -> int:
        """Number of signal components N."""
        return component_count(self._shape)

    @property
    @abstractmethod
    def m(self) -> int:
        """Number of measurements."""

    @abstractmethod
    def _forward(self, u: np.ndarray) -> np.ndarray: ...

    @abstractmethod
    def _adjoint(self, y: np.ndarray) -> np.ndarray: ...

    @abstractmethod
    def gram_dense(self) -> np.ndarray:
        """Dense N×N matrix AᵀA (row-major signal ordering)."""

    def gram_sparse(self) -> sp.spmatrix | None:
        """Sparse AᵀA when the operator admits one, else None."""
        return None

    def forward(self, u: Signal | np.ndarray) -> np.ndarray:
        """Apply A; accepts a Signal, a signal-shaped array or a flat array."""
        return self._forward(as_array(u, self._shape))

    def adjoint(self, y: np.ndarray) -> np.ndarray:
        """Apply Aᵀ; returns a signal-shaped array."""
        y = np.asarray(y, dtype=np.float64)
        if y.ndim != 1 or y.size != self.m:
            raise DimensionError(
                f"Measurement vector must have {self.m} entries, got shape {y.shape}",
                details={"expected": self.m, "actual": y.shape},
            )
        return self._adjoint(y)

    def constant_response(self) -> float:
        """‖A·1‖₂ relative to ‖1‖₂; zero means constants are unobserved."""
        ones = np.ones(self._shape)
        return float(np.linalg.norm(self._forward(ones)) / np.sqrt(self.n))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(shape={self._shape}, m={self.m})"


class IdentityOperator(MeasurementOperator):
    """A = I (denoising)."""

    kind = "identity"

    @property
    def m(self) -> int:
        return self.n

    def _forward(self, u: np.ndarray) -> np.ndarray:
        return u.reshape(-1).copy()

    def _adjoint(self, y: np.ndarray) -> np.ndarray:
        return y.reshape(self._shape).copy()

    def gram_dense(self) -> np.ndarray:
        return np.eye(self.n)

    def gram_sparse(self) -> sp.spmatrix:
        return sp.identity(self.n, format="csr")


class DenseOperator(MeasurementOperator):
    """Explicit m×N real matrix."""

    kind = "dense"

    def __init__(self, signal_shape: Shape, matrix: np.ndarray) -> None:
        super().__init__(signal_shape)
        matrix = np.array(matrix, dtype=np.float64, copy=True)
        if matrix.ndim != 2 or matrix.shape[1] != self.n:
            raise DimensionError(
                f"Matrix must have {self.n} columns, got shape {matrix.shape}",
                details={"expected_columns": self.n, "shape": matrix.shape},
            )
        matrix.flags.writeable = False
        self._matrix = matrix

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def m(self) -> int:
        return self._matrix.shape[0]

    def _forward(self, u: np.ndarray) -> np.ndarray:
        return self._matrix @ u.reshape(-1)

    def _adjoint(self, y: np.ndarray) -> np.ndarray:
        return (self._matrix.T @ y).reshape(self._shape)

    def gram_dense(self) -> np.ndarray:
        return self._matrix.T @ self._matrix


class PartialFourierOperator(MeasurementOperator):
    """Selected DFT coefficients, real and imaginary parts stacked.

    In 2D the selection holds ``(k_x, k_y)`` pairs: ``k_x`` indexes columns
    and ``k_y`` rows of ``numpy.fft.fft2``.
    """

    kind = "partial-fourier"

    def __init__(self, signal_shape: Shape, selection: np.ndarray) -> None:
        super().__init__(signal_shape)
        self._selection = _validate_selection(self._shape, selection)
        if len(self._shape) == 1:
            self._index: tuple[np.ndarray, ...] = (self._selection,)
        else:
            # fft2 output is indexed [k_y, k_x]
            self._index = (self._selection[:, 1], self._selection[:, 0])

    @property
    def selection(self) -> np.ndarray:
        return self._selection

    @property
    def m(self) -> int:
        return 2 * len(self._selection)

    def _spectrum(self, u: np.ndarray) -> np.ndarray:
        return np.fft.fft(u) if u.ndim == 1 else np.fft.fft2(u)

    def _forward(self, u: np.ndarray) -> np.ndarray:
        coeffs = self._spectrum(u)[self._index]
        out = np.empty(2 * coeffs.size)
        out[0::2] = coeffs.real
        out[1::2] = coeffs.imag
        return out

    def _adjoint(self, y: np.ndarray) -> np.ndarray:
        spectrum = np.zeros(self._shape, dtype=np.complex128)
        spectrum[self._index] = y[0::2] + 1j * y[1::2]
        if len(self._shape) == 1:
            return self.n * np.fft.ifft(spectrum).real
        return self.n * np.fft.ifft2(spectrum).real

    def _kernel(self) -> np.ndarray:
        # First column of the (block-)circulant AᵀA.
        e0 = np.zeros(self._shape)
        e0[(0,) * len(self._shape)] = 1.0
        return self._adjoint(self._forward(e0))

    def gram_dense(self) -> np.ndarray:
        kernel = self._kernel()
        if len(self._shape) == 1:
            idx = np.arange(self.n)
            return kernel[(idx[:, None] - idx[None, :]) % self.n]
        rows, cols = self._shape
        r = np.arange(rows)
        c = np.arange(cols)
        dr = (r[:, None] - r[None, :]) % rows
        dc = (c[:, None] - c[None, :]) % cols
        gram = kernel[dr[:, None, :, None], dc[None, :, None, :]]
        return gram.reshape(self.n, self.n)

    def separable_axis(self) -> Literal["x", "y"] | None:
        """Axis of a product-form selection.

        Returns ``"x"`` when the selection is ``S_x × {all k_y}``, ``"y"`` when
        it is ``{all k_x} × S_y`` and None otherwise (and always in 1D).
        """
        if len(self._shape) == 1:
            return None
        rows, cols = self._shape
        kx = np.unique(self._selection[:, 0])
        ky = np.unique(self._selection[:, 1])
        count = len(self._selection)
        if len(ky) == rows and count == len(kx) * rows:
            return "x"
        if len(kx) == cols and count == len(ky) * cols:
            return "y"
        return None

    def gram_sparse(self) -> sp.spmatrix | None:
        axis = self.separable_axis()
        if axis is None:
            return None
        rows, cols = self._shape
        if axis == "x":
            freqs = np.unique(self._selection[:, 0])
            block = _cosine_circulant(cols, freqs)
            return (rows * sp.kron(sp.identity(rows), sp.csr_matrix(block))).tocsr()
        freqs = np.unique(self._selection[:, 1])
        block = _cosine_circulant(rows, freqs)
        return (cols * sp.kron(sp.csr_matrix(block), sp.identity(cols))).tocsr()


def _cosine_circulant(n: int, freqs: np.ndarray) -> np.ndarray:
    """n×n matrix with entries Σ_k cos(2π k (i - j) / n)."""
    d = np.arange(n)[:, None] - np.arange(n)[None, :]
    return np.cos(2.0 * np.pi * np.multiply.outer(d, freqs) / n).sum(axis=-1)


def _validate_selection(shape: Shape, selection: np.ndarray | list) -> np.ndarray:
    sel = np.asarray(selection)
    if sel.size == 0:
        raise SelectionError("Frequency selection must not be empty")
    if not np.issubdtype(sel.dtype, np.integer):
        if not np.all(np.equal(np.mod(sel, 1), 0)):
            raise SelectionError("Frequency indices must be integers")
        sel = sel.astype(np.int64)
    sel = sel.astype(np.int64)
    if len(shape) == 1:
        sel = sel.reshape(-1)
        bad = (sel < 0) | (sel >= shape[0])
        if bad.any():
            raise SelectionError(
                f"Frequency index out of range for N={shape[0]}: {int(sel[bad][0])}",
                details={"index": int(sel[bad][0])},
            )
        _, counts = np.unique(sel, return_counts=True)
    else:
        if sel.ndim != 2 or sel.shape[1] != 2:
            raise SelectionError("2D selection must be a list of (k_x, k_y) pairs")
        rows, cols = shape
        bad = (sel[:, 0] < 0) | (sel[:, 0] >= cols) | (sel[:, 1] < 0) | (sel[:, 1] >= rows)
        if bad.any():
            pair = tuple(int(v) for v in sel[bad][0])
            raise SelectionError(
                f"Frequency pair out of range for shape {shape}: {pair}",
                details={"pair": pair},
            )
        _, counts = np.unique(sel, axis=0, return_counts=True)
    if (counts > 1).any():
        raise SelectionError("Frequency selection contains duplicates")
    sel.flags.writeable = False
    return sel


def make_partial_fourier(shape: int | Shape, selection: np.ndarray | list) -> PartialFourierOperator:
    """Partial-Fourier operator for ``shape`` retaining ``selection`` in order."""
    return PartialFourierOperator(normalize_shape(shape), np.asarray(selection))


def make_identity(shape: int | Shape) -> IdentityOperator:
    """Identity operator on signals of ``shape``."""
    return IdentityOperator(normalize_shape(shape))


def make_dense(shape: int | Shape, matrix: np.ndarray) -> DenseOperator:
    """Dense-matrix operator on signals of ``shape``."""
    return DenseOperator(normalize_shape(shape), matrix)


def forward_apply(op: MeasurementOperator, u: Signal | np.ndarray) -> np.ndarray:
    """Noiseless measurement ``A u``."""
    return op.forward(u)


def adjoint_apply(op: MeasurementOperator, y: np.ndarray) -> np.ndarray:
    """Transpose action ``Aᵀ y`` (signal-shaped)."""
    return op.adjoint(y)
