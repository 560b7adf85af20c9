"""Limit sets Lambda_- and Lambda_+ of the matings F_a = J o Cov.

Membership is decided in J o Cov coordinates by depth-limited chain
searches:

    Lambda_-  a forward chain of ``depth`` steps staying outside Delta_Cov
    Lambda_+  a backward chain of ``depth`` steps staying in closure(Delta_Cov)

A chain also succeeds when it enters the near-P buffer around P = 1. Pixels
in neither set are Regular; a search that runs out of nodes gives Unknown.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import Callable, Optional

import numpy as np

from scripts.core.correspondence import (
    Coords,
    MatingCorr,
    involution_j,
    mating_backward,
    mating_forward,
    phi_a,
    phi_a_inverse,
)
from scripts.core.errors import PoleInput
from scripts.mating.domains import (
    PARABOLIC_POINT,
    check_parameter,
    in_cov_closure,
    in_cov_domain,
    mating_config,
)
from scripts.render.grid import GridSpec, Raster
from scripts.render.parallel import parallel_map

logger = logging.getLogger(__name__)


class LimitLabel(IntEnum):
    LAMBDA_MINUS = 0
    LAMBDA_PLUS = 1
    REGULAR = 2
    UNKNOWN = 3


LIMIT_PALETTE = {
    LimitLabel.LAMBDA_MINUS: (0, 0, 160),
    LimitLabel.LAMBDA_PLUS: (200, 0, 0),
    LimitLabel.REGULAR: (255, 255, 255),
    LimitLabel.UNKNOWN: (128, 128, 128),
}


class ChainStatus(str, Enum):
    FOUND = "found"
    NONE = "none"
    EXHAUSTED = "exhausted"


@dataclass
class LimitSetRaster(Raster):
    """Label raster plus the pixels found in both limit sets."""

    label_type: type[IntEnum] = LimitLabel
    shared: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        super().__post_init__()
        if self.shared is None:
            self.shared = np.zeros(self.labels.shape, dtype=bool)

    def summary(self) -> dict:
        return {**super().summary(), "shared": int(np.count_nonzero(self.shared))}


@dataclass(frozen=True)
class LimitVerdict:
    label: LimitLabel
    shared: bool = False
    nodes: int = field(default=0, compare=False)


def _images(step: Callable, corr: MatingCorr, z: complex) -> list[complex]:
    try:
        return step(corr, z).values
    except PoleInput:
        return []


def chain_search(
    corr: MatingCorr,
    start: complex,
    step: Callable,
    allowed: Callable[[complex], bool],
    depth: int,
    budget: int,
    buffer: float,
) -> tuple[ChainStatus, int]:
    """Depth-first search for a chain of ``depth`` steps through ``allowed`` points."""
    stack = [(start, 0)]
    expanded = 0
    while stack:
        point, level = stack.pop()
        if level == depth or abs(point - PARABOLIC_POINT) <= buffer:
            return ChainStatus.FOUND, expanded
        if expanded >= budget:
            return ChainStatus.EXHAUSTED, expanded
        expanded += 1
        for w in reversed(_images(step, corr, point)):
            if allowed(w) or abs(w - PARABOLIC_POINT) <= buffer:
                stack.append((w, level + 1))
    return ChainStatus.NONE, expanded


def _outside_cov(z: complex) -> bool:
    return not in_cov_domain(z)


def classify_point(corr: MatingCorr, zeta: complex, depth: int, budget: int, buffer: float) -> LimitVerdict:
    """Limit-set label of a point given in J o Cov coordinates.

    Lambda_- wins ties; ``shared`` records that both searches succeeded.
    """
    if corr.coords is not Coords.COVJ:
        raise ValueError("classify_point works in J o Cov coordinates")
    near_p = abs(zeta - PARABOLIC_POINT) <= buffer
    minus = plus = ChainStatus.NONE
    nodes = 0
    if near_p or _outside_cov(zeta):
        minus, used = chain_search(corr, zeta, mating_forward, _outside_cov, depth, budget, buffer)
        nodes += used
    if near_p or in_cov_closure(zeta):
        plus, used = chain_search(corr, zeta, mating_backward, in_cov_closure, depth, budget, buffer)
        nodes += used
    if minus is ChainStatus.FOUND:
        return LimitVerdict(LimitLabel.LAMBDA_MINUS, plus is ChainStatus.FOUND, nodes)
    if plus is ChainStatus.FOUND:
        return LimitVerdict(LimitLabel.LAMBDA_PLUS, False, nodes)
    if ChainStatus.EXHAUSTED in (minus, plus):
        return LimitVerdict(LimitLabel.UNKNOWN, False, nodes)
    return LimitVerdict(LimitLabel.REGULAR, False, nodes)


def to_covj(a: complex, z: complex, coords: Coords) -> Optional[complex]:
    """Pixel coordinate to J o Cov coordinate; None for the point at infinity."""
    if coords is Coords.COVJ:
        return z
    try:
        return phi_a(a, z)
    except PoleInput:
        return None


def from_covj(a: complex, zeta: complex, coords: Coords) -> Optional[complex]:
    if coords is Coords.COVJ:
        return zeta
    try:
        return phi_a_inverse(a, zeta)
    except PoleInput:
        return None


def _limit_row(task: tuple) -> tuple[np.ndarray, np.ndarray]:
    a, coords, depth, budget, buffer, y, xs = task
    corr = MatingCorr(a, Coords.COVJ)
    coords = Coords(coords)
    labels = np.empty(len(xs), dtype=np.uint8)
    shared = np.zeros(len(xs), dtype=bool)
    for i, x in enumerate(xs):
        zeta = to_covj(a, complex(x, y), coords)
        if zeta is None:
            labels[i] = LimitLabel.UNKNOWN
            continue
        verdict = classify_point(corr, zeta, depth, budget, buffer)
        labels[i] = verdict.label
        shared[i] = verdict.shared
    return labels, shared


def render_limit_sets(
    a: complex,
    grid: GridSpec,
    depth: Optional[int] = None,
    coords: Coords = Coords.ORIGINAL,
    node_budget: Optional[int] = None,
    near_p_buffer: Optional[float] = None,
    workers: Optional[int] = None,
) -> LimitSetRaster:
    """Lambda_-, Lambda_+ and Regular pixels of F_a on ``grid``.

    Pixel centers are read in ``coords``; in the original coordinates P is 0.

    Raises:
        OutsideDisk: a is outside the Klein disk.
    """
    a = check_parameter(a)
    cfg = mating_config()
    depth = int(depth or cfg["depth"])
    budget = int(node_budget or cfg["node_budget"])
    buffer = float(cfg["near_p_buffer"] if near_p_buffer is None else near_p_buffer)
    started = time.perf_counter()
    xs = grid.xs()
    tasks = [(a, coords.value, depth, budget, buffer, grid.y(j), xs) for j in range(grid.pixels_y)]
    rows = parallel_map(_limit_row, tasks, workers)
    labels = np.vstack([row[0] for row in rows]).astype(np.uint8)
    shared = np.vstack([row[1] for row in rows])
    raster = LimitSetRaster(grid, labels, {
        "kind": "limit_sets",
        "a": [a.real, a.imag],
        "coords": coords.value,
        "depth": depth,
        "node_budget": budget,
        "near_p_buffer": buffer,
    }, shared=shared)
    unknown = raster.count(LimitLabel.UNKNOWN)
    if unknown:
        logger.warning("%d limit-set pixels are unknown", unknown)
    logger.info(
        "limit sets %dx%d for a=%s (%s) in %.2fs",
        grid.pixels_x, grid.pixels_y, a, coords.value, time.perf_counter() - started,
    )
    return raster


def _raster_coords(raster: LimitSetRaster) -> Coords:
    return Coords(raster.meta.get("coords", Coords.ORIGINAL.value))


def _j_cell(raster: LimitSetRaster, a: complex, coords: Coords, z: complex) -> Optional[tuple[int, int]]:
    """(col, row) of the pixel holding J(z), or None when it leaves the window."""
    zeta = to_covj(a, z, coords)
    if zeta is None:
        return None
    try:
        image = from_covj(a, involution_j(a, zeta), coords)
    except PoleInput:
        return None
    return None if image is None else raster.grid.locate(image)


def _plus_mask(raster: LimitSetRaster) -> np.ndarray:
    return (raster.labels == LimitLabel.LAMBDA_PLUS) | raster.shared


def j_symmetry_score(raster: LimitSetRaster, a: complex) -> Optional[float]:
    """Fraction of Lambda_- pixels whose J-image lands on a Lambda_+ (or shared) pixel.

    Images leaving the window are ignored; None when nothing lands.
    """
    coords = _raster_coords(raster)
    points = raster.grid.points()
    plus = _plus_mask(raster)
    rows, cols = np.nonzero(raster.labels == LimitLabel.LAMBDA_MINUS)
    landed = hits = 0
    for row, col in zip(rows, cols):
        cell = _j_cell(raster, a, coords, complex(points[row, col]))
        if cell is None:
            continue
        landed += 1
        hits += bool(plus[cell[1], cell[0]])
    if landed == 0:
        return None
    return hits / landed


def j_symmetric_difference(raster: LimitSetRaster, a: complex) -> Optional[float]:
    """Pixels in exactly one of J(Lambda_-) and Lambda_+, over the smaller of the two.

    Only pixels whose J-image stays in the window take part; None when
    either set is empty there.
    """
    coords = _raster_coords(raster)
    points = raster.grid.points()
    image = np.zeros(raster.labels.shape, dtype=bool)
    for row, col in zip(*np.nonzero(raster.labels == LimitLabel.LAMBDA_MINUS)):
        cell = _j_cell(raster, a, coords, complex(points[row, col]))
        if cell is not None:
            image[cell[1], cell[0]] = True
    plus = np.zeros(raster.labels.shape, dtype=bool)
    for row, col in zip(*np.nonzero(_plus_mask(raster))):
        plus[row, col] = _j_cell(raster, a, coords, complex(points[row, col])) is not None
    smaller = min(int(image.sum()), int(plus.sum()))
    if smaller == 0:
        return None
    difference = int(np.count_nonzero(image ^ plus))
    logger.debug("J-symmetric difference %d pixels against %d", difference, smaller)
    return difference / smaller


def coords_agreement(original: LimitSetRaster, covj: LimitSetRaster, a: complex) -> Optional[float]:
    """Fraction of original-coordinate pixels whose label matches the J o Cov pixel at phi_a(z).

    Pixels that map outside ``covj``'s window (or to infinity) are skipped;
    a pixel counts as matching when both labels agree or both are shared.

    Raises:
        ValueError: The rasters are not in original and J o Cov coordinates.
    """
    if _raster_coords(original) is not Coords.ORIGINAL or _raster_coords(covj) is not Coords.COVJ:
        raise ValueError("coords_agreement needs an original raster and a J o Cov raster")
    points = original.grid.points()
    compared = matched = 0
    for (row, col), z in np.ndenumerate(points):
        zeta = to_covj(a, complex(z), Coords.ORIGINAL)
        cell = None if zeta is None else covj.grid.locate(zeta)
        if cell is None:
            continue
        compared += 1
        target = (cell[1], cell[0])
        same_label = original.labels[row, col] == covj.labels[target]
        matched += bool(same_label or (original.shared[row, col] and covj.shared[target]))
    if compared == 0:
        return None
    return matched / compared
