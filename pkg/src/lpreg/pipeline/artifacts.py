"""Experiment output directory writer."""

from __future__ import annotations

from pathlib import Path
from typing import Any, Literal

import msgspec
import numpy as np

from lpreg.admm.state import ReconstructionResult
from lpreg.core.exceptions import ImageIOError
from lpreg.operators.masks import save_mask
from lpreg.synth.imageio import save_array, save_image
from lpreg.utils.helpers import ensure_dir

Render = Literal["none", "minmax"] | None


class ArtifactWriter:
    """Writes experiment files into one directory and remembers their names.

    2D arrays get a PGM rendering next to their CSV unless ``render`` is None.
    """

    def __init__(self, output_dir: Path | str) -> None:
        self._dir = ensure_dir(output_dir)
        self._written: list[str] = []

    @property
    def directory(self) -> Path:
        return self._dir

    @property
    def written(self) -> list[str]:
        """File names written so far, sorted."""
        return sorted(self._written)

    def _record(self, path: Path) -> Path:
        self._written.append(path.name)
        return path

    def array(self, name: str, values: np.ndarray, render: Render = "minmax") -> Path:
        """Write ``name.csv`` and, for 2D data, ``name.pgm``."""
        values = np.asarray(values, dtype=np.float64)
        path = self._record(save_array(self._dir / f"{name}.csv", values))
        if render is not None and values.ndim == 2:
            self._record(save_image(self._dir / f"{name}.pgm", values, scale=render))
        return path

    def mask(self, name: str, selection: np.ndarray) -> Path:
        return self._record(save_mask(self._dir / name, selection))

    def history(self, method: str, result: ReconstructionResult) -> Path:
        return self._record(result.write_history(self._dir / f"history_{method}.csv"))

    def text(self, name: str, content: str) -> Path:
        path = self._dir / name
        try:
            path.write_text(content, encoding="utf-8")
        except OSError as e:
            raise ImageIOError(f"Cannot write {path}: {e}") from e
        return self._record(path)

    def json(self, name: str, obj: Any) -> Path:
        """Write ``obj`` as indented JSON with a trailing newline."""
        encoded = msgspec.json.format(msgspec.json.encode(obj), indent=2)
        return self.text(name, encoded.decode("utf-8") + "\n")
