"""Pixel-topology heuristics for filled-Julia rasters."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import ndimage

from scripts.core.errors import TooManyUnknown
from scripts.render.grid import Label, Raster

logger = logging.getLogger(__name__)

MAX_UNKNOWN_FRACTION = 0.01
CANTOR_MIN_COMPONENTS = 20
CANTOR_MAX_SIZE_PX = 3

_FOUR = ndimage.generate_binary_structure(2, 1)
_EIGHT = ndimage.generate_binary_structure(2, 2)


class SetVerdict(str, Enum):
    FULL = "full"
    CARPET = "carpet"
    CANTOR_LIKE = "cantor_like"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SetClassification:
    """Topological signature of a raster. Hyperbolicity is not checked."""

    verdict: SetVerdict
    components_inside: int
    components_complement: int
    unknown_fraction: float = 0.0

    def summary(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "components_inside": self.components_inside,
            "components_complement": self.components_complement,
            "unknown_fraction": self.unknown_fraction,
        }


def classify_set(raster: Raster) -> SetClassification:
    """Full, Carpet or Cantor-like signature of the Inside set.

    Inside (with Boundary) components use 4-connectivity; the complement
    (Outside, with the window frame counted as one outside region) uses
    8-connectivity. Unknown pixels belong to neither.

    Raises:
        TooManyUnknown: At least 1% of the pixels are Unknown.
    """
    labels = raster.labels
    unknown = raster.unknown_fraction
    if unknown >= MAX_UNKNOWN_FRACTION:
        raise TooManyUnknown(f"{100 * unknown:.2f}% of pixels are unknown")

    inside = (labels == Label.INSIDE) | (labels == Label.BOUNDARY)
    inside_labels, inside_count = ndimage.label(inside, structure=_FOUR)

    complement = np.pad(labels == Label.OUTSIDE, 1, constant_values=True)
    _, complement_count = ndimage.label(complement, structure=_EIGHT)

    if inside_count == 1 and complement_count == 1:
        verdict = SetVerdict.FULL
    elif inside_count == 1 and complement_count >= 2:
        verdict = SetVerdict.CARPET
    elif inside_count >= CANTOR_MIN_COMPONENTS and _all_small(inside_labels):
        verdict = SetVerdict.CANTOR_LIKE
    else:
        verdict = SetVerdict.INCONCLUSIVE
    logger.debug(
        "classified %s: %d inside, %d complement components",
        verdict.value, inside_count, complement_count,
    )
    return SetClassification(verdict, int(inside_count), int(complement_count), unknown)


def _all_small(components: np.ndarray) -> bool:
    for window in ndimage.find_objects(components):
        if window is None:
            continue
        rows, cols = window
        if rows.stop - rows.start > CANTOR_MAX_SIZE_PX or cols.stop - cols.start > CANTOR_MAX_SIZE_PX:
            return False
    return True


def circle_deviation_px(raster: Raster) -> float:
    """Largest | |z| - 1 | over Boundary pixels, in pixel widths (0 if none)."""
    rows, cols = np.nonzero(raster.labels == Label.BOUNDARY)
    if rows.size == 0:
        return 0.0
    points = raster.grid.points()[rows, cols]
    return float(np.max(np.abs(np.abs(points) - 1.0)) / raster.grid.pixel)
