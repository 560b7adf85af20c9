"""Rasters of K_c, J_c, M_{beta,0} and M_beta for z^{p/q} + c.

Rows are independent tasks handed to ``parallel_map``; each task carries
plain numbers only, so every worker count produces the same labels.
"""

from __future__ import annotations

import logging
import time
from enum import Enum
from typing import Optional

import numpy as np

from scripts.core.correspondence import PowerCorr, RationalExp, root_set
from scripts.core.errors import SeedNotRepelling, TooManyUnknown
from scripts.orbits.engine import (
    EscapeParams,
    OrbitStatus,
    cell_tree_search,
    certain_escape_radius,
    escape_radius,
    orbit_tree_search,
)
from scripts.render.classify import SetVerdict, classify_set
from scripts.render.grid import GridSpec, Label, Raster, mark_boundary
from scripts.render.parallel import parallel_map
from scripts.utils.config import load_section

logger = logging.getLogger(__name__)

_DEFAULTS = {
    "sub_resolution": 64,
    "sub_window": 2.2,
    "cell_levels": 3,
    "backward_steps": 100_000,
    "seed": 0,
}

_STATUS_LABEL = {
    OrbitStatus.BOUNDED: Label.INSIDE,
    OrbitStatus.ESCAPED: Label.OUTSIDE,
    OrbitStatus.BUDGET_EXHAUSTED: Label.UNKNOWN,
}


class ParameterVariant(str, Enum):
    M_BETA_ZERO = "m_beta_zero"
    M_BETA = "m_beta"


def render_config() -> dict:
    return load_section("render", _DEFAULTS)


# ---------------------------------------------------------------------------
# Row workers (module level so they pickle)
# ---------------------------------------------------------------------------

def _filled_row(task: tuple) -> np.ndarray:
    p, q, c, limit, depth, budget, half, levels, y, xs = task
    row = np.empty(len(xs), dtype=np.uint8)
    for i, x in enumerate(xs):
        z = complex(x, y)
        status = orbit_tree_search(z, c, p, q, limit, depth, budget).status
        if status is OrbitStatus.ESCAPED:
            status = cell_tree_search(z, half, c, p, q, limit, depth, budget, levels)
        row[i] = _STATUS_LABEL[status]
    return row


def _parameter_limit(corr: PowerCorr, radius_override: float) -> float:
    radius = max(radius_override, escape_radius(corr))
    return min(radius, certain_escape_radius(corr) * (1 + 1e-12))


def _m_beta_zero_row(task: tuple) -> np.ndarray:
    p, q, override, depth, budget, y, xs = task
    exp = RationalExp(p, q)
    row = np.empty(len(xs), dtype=np.uint8)
    for i, x in enumerate(xs):
        corr = PowerCorr(exp, complex(x, y))
        verdict = orbit_tree_search(0j, corr.c, p, q, _parameter_limit(corr, override), depth, budget)
        row[i] = _STATUS_LABEL[verdict.status]
    return row


def _m_beta_row(task: tuple) -> np.ndarray:
    p, q, override, depth, budget, sub, window, y, xs = task
    exp = RationalExp(p, q)
    row = np.empty(len(xs), dtype=np.uint8)
    for i, x in enumerate(xs):
        corr = PowerCorr(exp, complex(x, y))
        params = EscapeParams(max(override, escape_radius(corr)), depth, budget)
        grid = GridSpec.square(0j, window * certain_escape_radius(corr), sub)
        raster = render_filled_julia(corr, grid, params, workers=1)
        try:
            verdict = classify_set(raster).verdict
        except TooManyUnknown:
            row[i] = Label.UNKNOWN
            continue
        connected = verdict in (SetVerdict.FULL, SetVerdict.CARPET)
        row[i] = Label.INSIDE if connected else Label.OUTSIDE
    return row


def _assemble(grid: GridSpec, rows: list[np.ndarray]) -> np.ndarray:
    labels = np.vstack(rows) if rows else np.empty(grid.shape, dtype=np.uint8)
    return labels.astype(np.uint8, copy=False)


# ---------------------------------------------------------------------------
# Public renderers
# ---------------------------------------------------------------------------

def render_filled_julia(
    corr: PowerCorr,
    grid: GridSpec,
    params: EscapeParams,
    workers: Optional[int] = None,
    cell_levels: Optional[int] = None,
) -> Raster:
    """Per-pixel filled-Julia verdicts with the boundary of the Inside set marked.

    A pixel is Inside when its center has a bounded orbit tree, or when its
    square, split ``cell_levels`` times, keeps a sub-square whose disk has a
    chain that stays near K_c. Thin parts of K_c between pixel centers are
    drawn this way.
    """
    started = time.perf_counter()
    limit = params.prune_limit(corr)
    levels = int(render_config()["cell_levels"] if cell_levels is None else cell_levels)
    if levels < 0:
        raise ValueError(f"cell_levels must be >= 0, got {levels}")
    half = grid.pixel / 2
    xs = grid.xs()
    tasks = [
        (corr.p, corr.q, corr.c, limit, params.max_depth, params.node_budget, half, levels, grid.y(j), xs)
        for j in range(grid.pixels_y)
    ]
    labels = mark_boundary(_assemble(grid, parallel_map(_filled_row, tasks, workers)))
    raster = Raster(grid, labels, {
        "kind": "filled_julia",
        "beta": f"{corr.p}/{corr.q}",
        "c": [corr.c.real, corr.c.imag],
        "depth": params.max_depth,
        "node_budget": params.node_budget,
        "radius": params.radius,
        "cell_levels": levels,
    })
    unknown = raster.count(Label.UNKNOWN)
    if unknown:
        logger.warning("%d pixels exhausted the node budget", unknown)
    logger.info(
        "filled Julia %dx%d at c=%s in %.2fs",
        grid.pixels_x, grid.pixels_y, corr.c, time.perf_counter() - started,
    )
    return raster


def _check_repelling_seed(corr: PowerCorr, seed: complex) -> None:
    if seed == 0:
        raise SeedNotRepelling("the critical point 0 is not a repelling seed")
    if abs((seed - corr.c) ** corr.q - seed**corr.p) > 1e-8 * max(1.0, abs(seed) ** corr.p):
        raise SeedNotRepelling(f"seed {seed} is not a fixed point")
    multiplier = (corr.p / corr.q) * (seed - corr.c) / seed
    if abs(multiplier) <= 1.0:
        raise SeedNotRepelling(f"seed {seed} has multiplier modulus {abs(multiplier):.6g} <= 1")


def backward_orbit_points(corr: PowerCorr, seed: complex, steps: int, rng_seed: int = 0) -> np.ndarray:
    """Random backward orbit from a repelling fixed point (chaos game).

    Raises:
        SeedNotRepelling: ``seed`` is not a repelling fixed point.
    """
    seed = complex(seed)
    _check_repelling_seed(corr, seed)
    rng = np.random.default_rng(rng_seed)
    choices = rng.integers(0, corr.p, size=steps)
    points = np.empty(steps, dtype=complex)
    z = seed
    for n in range(steps):
        shifted = z - corr.c
        branches = root_set(shifted, corr.q, corr.p) if shifted != 0 else [0j]
        z = branches[choices[n] % len(branches)]
        points[n] = z
    return points


def render_julia_boundary(
    corr: PowerCorr,
    grid: GridSpec,
    params: EscapeParams,
    backward_seed: Optional[complex] = None,
    steps: Optional[int] = None,
    workers: Optional[int] = None,
) -> Raster:
    """J_c as Boundary pixels on an Outside background.

    Without ``backward_seed`` the boundary of the filled-Julia raster is
    kept. With it, ``steps`` random backward images of the seed are plotted.
    """
    if backward_seed is None:
        filled = render_filled_julia(corr, grid, params, workers)
        labels = filled.labels.copy()
        labels[labels == Label.INSIDE] = Label.OUTSIDE
        return Raster(grid, labels, {**filled.meta, "kind": "julia", "mode": "boundary"})

    cfg = render_config()
    count = int(steps or cfg["backward_steps"])
    labels = np.full(grid.shape, Label.OUTSIDE, dtype=np.uint8)
    for z in backward_orbit_points(corr, backward_seed, count, cfg["seed"]):
        cell = grid.locate(z)
        if cell is not None:
            labels[cell[1], cell[0]] = Label.BOUNDARY
    logger.info("backward orbit of %d points from %s", count, backward_seed)
    return Raster(grid, labels, {
        "kind": "julia",
        "mode": "backward",
        "beta": f"{corr.p}/{corr.q}",
        "c": [corr.c.real, corr.c.imag],
        "seed": [complex(backward_seed).real, complex(backward_seed).imag],
        "steps": count,
    })


def render_parameter_set(
    exp: RationalExp,
    grid: GridSpec,
    params: EscapeParams,
    variant: ParameterVariant = ParameterVariant.M_BETA_ZERO,
    sub_resolution: Optional[int] = None,
    workers: Optional[int] = None,
) -> Raster:
    """M_{beta,0} (orbit of 0 bounded) or the connectedness heuristic M_beta.

    ``params.radius`` acts as an override: each pixel uses
    max(params.radius, escape_radius(c)).
    """
    started = time.perf_counter()
    cfg = render_config()
    xs = grid.xs()
    meta = {
        "kind": variant.value,
        "beta": f"{exp.p}/{exp.q}",
        "depth": params.max_depth,
        "node_budget": params.node_budget,
    }
    if variant is ParameterVariant.M_BETA_ZERO:
        tasks = [
            (exp.p, exp.q, params.radius, params.max_depth, params.node_budget, grid.y(j), xs)
            for j in range(grid.pixels_y)
        ]
        rows = parallel_map(_m_beta_zero_row, tasks, workers)
    else:
        sub = int(sub_resolution or cfg["sub_resolution"])
        meta["sub_resolution"] = sub
        tasks = [
            (exp.p, exp.q, params.radius, params.max_depth, params.node_budget,
             sub, cfg["sub_window"], grid.y(j), xs)
            for j in range(grid.pixels_y)
        ]
        rows = parallel_map(_m_beta_row, tasks, workers)
    labels = mark_boundary(_assemble(grid, rows))
    logger.info(
        "%s %dx%d for beta=%s in %.2fs",
        variant.value, grid.pixels_x, grid.pixels_y, exp, time.perf_counter() - started,
    )
    return Raster(grid, labels, meta)
