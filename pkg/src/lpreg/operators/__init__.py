"""Measurement and gradient operators."""

from lpreg.operators.gradient import (
    grad,
    grad_adjoint,
    gradient_adjoint,
    gradient_apply,
    gradient_matrix,
)
from lpreg.operators.masks import load_mask, lowest_frequencies, save_mask, strided_frequencies
from lpreg.operators.measurement import (
    DenseOperator,
    IdentityOperator,
    MeasurementOperator,
    PartialFourierOperator,
    adjoint_apply,
    forward_apply,
    make_dense,
    make_identity,
    make_partial_fourier,
)
from lpreg.operators.signal import (
    GradientField,
    Shape,
    Signal,
    component_count,
    gradient_length,
    normalize_shape,
    pixel_norms,
)

__all__ = [
    "Signal",
    "GradientField",
    "Shape",
    "normalize_shape",
    "component_count",
    "gradient_length",
    "pixel_norms",
    "MeasurementOperator",
    "IdentityOperator",
    "DenseOperator",
    "PartialFourierOperator",
    "make_partial_fourier",
    "make_identity",
    "make_dense",
    "forward_apply",
    "adjoint_apply",
    "grad",
    "grad_adjoint",
    "gradient_apply",
    "gradient_adjoint",
    "gradient_matrix",
    "lowest_frequencies",
    "strided_frequencies",
    "load_mask",
    "save_mask",
]
