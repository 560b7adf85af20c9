"""Depth-limited multivalued orbit search for z^{p/q} + c.

A point belongs to the filled Julia set K_c when at least one forward orbit
stays bounded. Membership at depth N is decided by a depth-first search over
the q-ary orbit tree, pruned as soon as a branch leaves the escape disk.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional

from scipy.optimize import brentq

from scripts.core.correspondence import PowerCorr, power_images
from scripts.utils.config import load_section

logger = logging.getLogger(__name__)

_DEFAULTS = {
    "depth": 60,
    "node_budget": 1_000_000,
    "radius_override": 0.0,
    "merge_tol": 1e-10,
}


def engine_config() -> dict:
    return load_section("engine", _DEFAULTS)


def escape_radius(corr: PowerCorr) -> float:
    """R = max(2^{1/(beta-1)}, 2|c|): beyond R every branch grows by 3/2."""
    return max(2.0 ** (1.0 / (corr.beta - 1.0)), 2.0 * abs(corr.c))


def certain_escape_radius(corr: PowerCorr) -> float:
    """The root r* >= 1 of r^beta - r - |c|; orbits outside |z| > r* escape."""
    modulus = abs(corr.c)
    if modulus == 0:
        return 1.0
    beta = corr.beta
    return float(brentq(lambda r: r**beta - r - modulus, 1.0, escape_radius(corr)))


@dataclass(frozen=True)
class EscapeParams:
    radius: float
    max_depth: int
    node_budget: int

    def __post_init__(self) -> None:
        if not self.radius > 0:
            raise ValueError(f"radius must be positive, got {self.radius}")
        if self.max_depth < 1:
            raise ValueError(f"max_depth must be >= 1, got {self.max_depth}")
        if self.node_budget < 1:
            raise ValueError(f"node_budget must be >= 1, got {self.node_budget}")

    @classmethod
    def for_corr(
        cls,
        corr: PowerCorr,
        max_depth: Optional[int] = None,
        node_budget: Optional[int] = None,
        radius_override: Optional[float] = None,
    ) -> "EscapeParams":
        """Parameters with radius max(override, escape_radius) and config defaults."""
        cfg = engine_config()
        override = cfg["radius_override"] if radius_override is None else radius_override
        return cls(
            radius=max(float(override or 0.0), escape_radius(corr)),
            max_depth=int(cfg["depth"] if max_depth is None else max_depth),
            node_budget=int(cfg["node_budget"] if node_budget is None else node_budget),
        )

    def prune_limit(self, corr: PowerCorr) -> float:
        """Modulus beyond which a branch is discarded.

        Raises:
            ValueError: ``radius`` is below the escape radius of ``corr``.
        """
        needed = escape_radius(corr)
        if self.radius < needed * (1 - 1e-12):
            raise ValueError(f"radius {self.radius} is below the escape radius {needed}")
        return min(self.radius, certain_escape_radius(corr) * (1 + 1e-12))


class OrbitStatus(str, Enum):
    BOUNDED = "bounded"
    ESCAPED = "escaped"
    BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass(frozen=True)
class OrbitVerdict:
    """Outcome of a membership query.

    ``witness`` holds z_1 .. z_N of the first bounded orbit found (Bounded
    only); ``nodes`` counts expanded tree nodes.
    """

    status: OrbitStatus
    witness: tuple[complex, ...] = field(default_factory=tuple)
    nodes: int = 0


def in_filled_julia(corr: PowerCorr, z: complex, params: EscapeParams) -> OrbitVerdict:
    limit = params.prune_limit(corr)
    return orbit_tree_search(complex(z), corr.c, corr.p, corr.q, limit, params.max_depth, params.node_budget)


def orbit_tree_search(z: complex, c: complex, p: int, q: int, limit: float, depth_max: int, budget: int) -> OrbitVerdict:
    if abs(z) > limit:
        return OrbitVerdict(OrbitStatus.ESCAPED)
    path: list[complex] = [0j] * (depth_max + 1)
    stack = [(z, 0)]
    expanded = 0
    while stack:
        point, depth = stack.pop()
        path[depth] = point
        if depth == depth_max:
            return OrbitVerdict(OrbitStatus.BOUNDED, tuple(path[1:]), expanded)
        if expanded >= budget:
            return OrbitVerdict(OrbitStatus.BUDGET_EXHAUSTED, nodes=expanded)
        expanded += 1
        children = power_images(point, c, p, q)
        for w in reversed(children):
            if abs(w) <= limit:
                stack.append((w, depth + 1))
    return OrbitVerdict(OrbitStatus.ESCAPED, nodes=expanded)


def disk_tree_search(
    z: complex, radius: float, c: complex, p: int, q: int, limit: float, depth_max: int, budget: int
) -> tuple[Optional[bool], int]:
    """Whether some branch chain of the disk |w - z| <= radius stays near K_c.

    Each step replaces a disk by a disk containing all its images: around
    each branch image with radius r * beta * (|z| + r)^(beta - 1), or around
    c with radius (|z| + r)^beta once the disk covers 0. A chain is dropped
    when its disk leaves the prune disk and succeeds when its radius reaches
    ``limit`` or it lasts ``depth_max`` steps. Returns (None, nodes) on
    budget exhaustion.
    """
    beta = p / q
    stack = [(complex(z), float(radius), 0)]
    expanded = 0
    while stack:
        point, r, depth = stack.pop()
        modulus = abs(point)
        if modulus - r > limit:
            continue
        if depth == depth_max or r >= limit:
            return True, expanded
        if expanded >= budget:
            return None, expanded
        expanded += 1
        if r >= modulus:
            stack.append((c, (modulus + r) ** beta, depth + 1))
            continue
        grown = r * beta * (modulus + r) ** (beta - 1)
        for w in power_images(point, c, p, q):
            stack.append((w, grown, depth + 1))
    return False, expanded


_QUADRANTS = (-1 - 1j, 1 - 1j, -1 + 1j, 1 + 1j)


def cell_tree_search(
    center: complex,
    half_width: float,
    c: complex,
    p: int,
    q: int,
    limit: float,
    depth_max: int,
    budget: int,
    levels: int,
) -> OrbitStatus:
    """Whether the square cell may meet K_c, refined ``levels`` times.

    The disk around each square is tested with ``disk_tree_search``; a
    surviving square is split into quadrants until ``levels`` splits have
    been made. BOUNDED means some finest square survives.
    """
    remaining = budget
    stack = [(complex(center), float(half_width), 0)]
    while stack:
        z, half, level = stack.pop()
        survives, used = disk_tree_search(z, half * math.sqrt(2.0), c, p, q, limit, depth_max, remaining)
        remaining -= used
        if survives is None:
            return OrbitStatus.BUDGET_EXHAUSTED
        if not survives:
            continue
        if level >= levels:
            return OrbitStatus.BOUNDED
        quarter = half / 2
        for offset in _QUADRANTS:
            stack.append((z + offset * quarter, quarter, level + 1))
    return OrbitStatus.ESCAPED


def _key(z: complex, tol: float) -> tuple[int, int]:
    return (round(z.real / tol), round(z.imag / tol))


def omega_limit_sample(corr: PowerCorr, z: complex, params: EscapeParams, tail: int) -> set[complex]:
    """Points of the last ``tail`` levels of all orbits surviving to max_depth.

    The orbit tree is expanded level by level with points merged at
    ``merge_tol``; only points with a descendant at the final level are kept.
    On budget exhaustion the levels built so far are used and a warning is
    logged.

    Raises:
        ValueError: ``tail`` is not smaller than ``max_depth``.
    """
    if not 1 <= tail < params.max_depth:
        raise ValueError(f"tail must satisfy 1 <= tail < max_depth, got {tail}")
    limit = params.prune_limit(corr)
    tol = engine_config()["merge_tol"]
    z = complex(z)
    if abs(z) > limit:
        return set()

    levels: list[list[complex]] = [[z]]
    children: list[list[list[int]]] = []
    expanded = 0
    for depth in range(params.max_depth):
        index: dict[tuple[int, int], int] = {}
        nxt: list[complex] = []
        links: list[list[int]] = []
        for point in levels[-1]:
            expanded += 1
            mine = []
            for w in power_images(point, corr.c, corr.p, corr.q):
                if abs(w) > limit:
                    continue
                key = _key(w, tol)
                if key not in index:
                    index[key] = len(nxt)
                    nxt.append(w)
                mine.append(index[key])
            links.append(mine)
        children.append(links)
        levels.append(nxt)
        if not nxt:
            return set()
        if expanded >= params.node_budget:
            logger.warning(
                "omega sample of %s stopped at depth %d/%d (budget %d)",
                z, depth + 1, params.max_depth, params.node_budget,
            )
            break

    alive = [True] * len(levels[-1])
    kept = [alive]
    for links in reversed(children):
        alive = [any(kept[-1][j] for j in mine) for mine in links]
        kept.append(alive)
    kept.reverse()
    if not kept[0][0]:
        return set()
    sample: set[complex] = set()
    for level, flags in zip(levels[-tail:], kept[-tail:]):
        sample.update(point for point, ok in zip(level, flags) if ok)
    return sample


def basin_check(
    corr: PowerCorr,
    attractor: Iterable[complex],
    samples: Iterable[complex],
    params: EscapeParams,
    tail: int = 4,
    tol: float = 1e-3,
) -> float:
    """Fraction of samples attracted to ``attractor`` or to infinity.

    A sample counts when its verdict is Escaped, or when it is Bounded and
    every sampled omega-limit point lies within ``tol`` of the attractor.
    Budget-exhausted samples never count.
    """
    targets = list(attractor)
    if not targets:
        raise ValueError("attractor must be nonempty")
    points = list(samples)
    if not points:
        return 0.0
    hits = 0
    for z in points:
        verdict = in_filled_julia(corr, z, params)
        if verdict.status is OrbitStatus.ESCAPED:
            hits += 1
        elif verdict.status is OrbitStatus.BOUNDED:
            omega = omega_limit_sample(corr, z, params, tail)
            if omega and all(min(abs(w - t) for t in targets) <= tol for w in omega):
                hits += 1
    fraction = hits / len(points)
    logger.debug("basin fraction %.4f over %d samples", fraction, len(points))
    return fraction
