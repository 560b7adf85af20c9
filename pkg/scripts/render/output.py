"""Binary PPM and CSV writers for label rasters."""

from __future__ import annotations

import logging
from enum import IntEnum
from pathlib import Path
from typing import Mapping, Optional, Sequence

import numpy as np
import pandas as pd

from scripts.core.errors import OutputError
from scripts.render.grid import Label, Raster
from scripts.utils.config import load_section

logger = logging.getLogger(__name__)

RGB = tuple[int, int, int]

DEFAULT_PALETTE: dict[int, RGB] = {
    Label.INSIDE: (0, 0, 0),
    Label.OUTSIDE: (255, 255, 255),
    Label.BOUNDARY: (255, 0, 0),
    Label.UNKNOWN: (128, 128, 128),
}


def load_palette(
    label_type: type[IntEnum] = Label,
    fallback: Optional[Mapping[int, RGB]] = None,
    overrides: Optional[Mapping[str, Sequence[int]]] = None,
) -> dict[int, RGB]:
    """Palette keyed by label value, overridden by the "palette" section.

    config.yaml keys are lower-case label names, values [r, g, b].
    ``overrides`` uses the same keys and wins over the file.
    """
    base = {int(k): v for k, v in (fallback or DEFAULT_PALETTE).items()}
    names = {label.name.lower(): int(label) for label in label_type}
    cfg = {**load_section("palette", {}), **(overrides or {})}
    for name, rgb in cfg.items():
        if name in names:
            base[names[name]] = _rgb(rgb)
    return base


def _rgb(value: Sequence[int]) -> RGB:
    r, g, b = (int(v) for v in value)
    if not all(0 <= v <= 255 for v in (r, g, b)):
        raise ValueError(f"colour components must be in 0..255, got {value}")
    return (r, g, b)


def encode_ppm(labels: np.ndarray, palette: Mapping[int, RGB]) -> bytes:
    """P6 bytes, row-major from the top-left pixel.

    Raises:
        ValueError: A label present in ``labels`` has no colour.
    """
    present = {int(v) for v in np.unique(labels)}
    missing = present - {int(k) for k in palette}
    if missing:
        raise ValueError(f"palette has no colour for labels {sorted(missing)}")
    lut = np.zeros((256, 3), dtype=np.uint8)
    for label, rgb in palette.items():
        lut[int(label)] = _rgb(rgb)
    height, width = labels.shape
    header = f"P6\n{width} {height}\n255\n".encode("ascii")
    return header + lut[labels.astype(np.uint8)].tobytes()


def write_ppm(raster: Raster, palette: Mapping[int, RGB], path: Path | str) -> Path:
    """Write ``raster`` as binary PPM.

    Raises:
        OutputError: The file could not be written.
    """
    data = encode_ppm(raster.labels, palette)
    target = Path(path)
    try:
        target.write_bytes(data)
    except OSError as e:
        raise OutputError(f"cannot write {target}: {e}") from e
    logger.info("wrote %s (%d bytes)", target, len(data))
    return target


def write_frame(frame: pd.DataFrame, path: Path | str) -> Path:
    """CSV with LF line endings and 17 significant digits.

    Raises:
        OutputError: The file could not be written.
    """
    target = Path(path)
    try:
        frame.to_csv(target, index=False, lineterminator="\n", float_format="%.17g")
    except OSError as e:
        raise OutputError(f"cannot write {target}: {e}") from e
    logger.info("wrote %s (%d rows)", target, len(frame))
    return target


def label_frame(raster: Raster) -> pd.DataFrame:
    rows, cols = np.indices(raster.labels.shape)
    names = {int(label): label.name.lower() for label in raster.label_type}
    return pd.DataFrame({
        "x": cols.ravel(),
        "y": rows.ravel(),
        "label": [names[int(v)] for v in raster.labels.ravel()],
    })


def write_label_csv(raster: Raster, path: Path | str) -> Path:
    """One "x,y,label" row per pixel, row-major."""
    return write_frame(label_frame(raster), path)
