"""Patch classification and exponent assignment."""

from __future__ import annotations

from typing import Literal

import msgspec
import numpy as np

from lpreg.admm.state import ExponentField
from lpreg.core.exceptions import DimensionError, InvalidInputError
from lpreg.exponent.patches import PatchGrid, expand_patch_values
from lpreg.exponent.pooling import PoolingMap
from lpreg.synth.signals import grid as sample_grid

PatchClass = Literal["smooth", "discontinuity", "oscillation"]

CLASS_CODES: dict[PatchClass, int] = {"smooth": 0, "discontinuity": 1, "oscillation": 2}
CLASS_NAMES: tuple[PatchClass, ...] = ("smooth", "discontinuity", "oscillation")


class ClassMap(msgspec.Struct, frozen=True, eq=False):
    """One class per patch, stored as codes from :data:`CLASS_CODES`."""

    codes: np.ndarray

    def __post_init__(self) -> None:
        if self.codes.ndim != 1 or not np.isin(self.codes, list(CLASS_CODES.values())).all():
            raise InvalidInputError("Class codes must be a 1D array of known codes")
        self.codes.flags.writeable = False

    @classmethod
    def from_labels(cls, labels: list[PatchClass]) -> ClassMap:
        return cls(codes=np.array([CLASS_CODES[name] for name in labels], dtype=np.int8))

    def labels(self) -> list[PatchClass]:
        return [CLASS_NAMES[c] for c in self.codes]

    def mask(self, name: PatchClass) -> np.ndarray:
        """Boolean mask of patches in class ``name``."""
        return self.codes == CLASS_CODES[name]

    def __len__(self) -> int:
        return self.codes.size


def _check_same_length(*maps: PoolingMap) -> int:
    sizes = {m.values.size for m in maps}
    if len(sizes) != 1:
        raise DimensionError(f"Pooling maps have different lengths: {sorted(sizes)}")
    return sizes.pop()


def classify_patches(
    var1n: PoolingMap,
    var2n: PoolingMap,
    filt1: PoolingMap,
    filt2: PoolingMap,
    eps_var: float,
) -> ClassMap:
    """Label each patch from the normalized variance and filtered maps.

    A patch meets the TV condition when ``var1n >= ε`` and ``filt1 < ε`` and
    the Tikhonov condition when ``var2n >= ε`` and ``filt2 >= ε``. Exactly one
    condition makes it a discontinuity (TV) or oscillation (Tikhonov) patch;
    none or both leave it smooth.
    """
    _check_same_length(var1n, var2n, filt1, filt2)
    tv = (var1n.values >= eps_var) & (filt1.values < eps_var)
    tik = (var2n.values >= eps_var) & (filt2.values >= eps_var)
    codes = np.full(var1n.values.size, CLASS_CODES["smooth"], dtype=np.int8)
    codes[tv & ~tik] = CLASS_CODES["discontinuity"]
    codes[tik & ~tv] = CLASS_CODES["oscillation"]
    return ClassMap(codes=codes)


def exponent_curve(a: np.ndarray | float, c: float) -> np.ndarray | float:
    """``2 - exp(-c·a)``: increasing from 1 at ``a = 0`` to ``2 - e^{-c}`` at 1."""
    return 2.0 - np.exp(-c * np.asarray(a, dtype=np.float64))


def patch_exponents(classes: ClassMap, avg1n: PoolingMap, avg2n: PoolingMap, c: float) -> np.ndarray:
    """Per-patch exponents ``q_j``."""
    if not c > 0:
        raise InvalidInputError(f"Exponent constant c must be positive, got {c}")
    if _check_same_length(avg1n, avg2n) != len(classes):
        raise DimensionError("Class map and average maps have different lengths")
    q = np.ones(len(classes))
    smooth = classes.mask("smooth")
    osc = classes.mask("oscillation")
    q[smooth] = exponent_curve(avg1n.values[smooth], c)
    q[osc] = exponent_curve(avg2n.values[osc], c)
    return q


def assign_exponents(
    classes: ClassMap,
    avg1n: PoolingMap,
    avg2n: PoolingMap,
    c: float,
    grid: PatchGrid,
) -> ExponentField:
    """Exponents: 1 on discontinuity patches, the curve of the TV average on
    smooth patches and of the Tikhonov average on oscillation patches,
    constant within each patch."""
    q = patch_exponents(classes, avg1n, avg2n, c)
    return ExponentField.of(expand_patch_values(q, grid), grid.shape)


def split_exponents(
    shape: int | tuple[int, ...],
    boundary: float,
    left: float = 1.0,
    right: float = 2.0,
) -> ExponentField:
    """Piecewise 1D exponents: ``left`` on nodes ``x <= boundary`` of ``[-1, 1]``,
    ``right`` beyond."""
    field = ExponentField.uniform(shape, left)
    if len(field.shape) != 1:
        raise InvalidInputError("Split exponents are defined for 1D signals only")
    x = sample_grid(field.shape[0])
    return ExponentField.of(np.where(x <= boundary, left, right), field.shape)


def class_fractions(classes: ClassMap, grid: PatchGrid) -> dict[PatchClass, float]:
    """Share of signal components covered by each class."""
    if len(classes) != grid.count:
        raise DimensionError("Class map does not match the patch grid")
    sizes = grid.sizes()
    total = float(sizes.sum())
    return {name: float(sizes[classes.mask(name)].sum()) / total for name in CLASS_NAMES}
