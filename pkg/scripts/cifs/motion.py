"""Branched holomorphic motion of J_0 = S^1, sampled through periodic points.

Every cycle of z^{p/q} on the unit circle with period <= period_max is
continued along a parameter path starting at c = 0. Where two cycle points
merge (or one reaches 0) the motion branches; the event is recorded and the
track is kept up to the last node before it.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import pandas as pd

from scripts.core.continuation import continue_cycle, periodic_points_on_circle
from scripts.core.correspondence import PowerCorr, RationalExp
from scripts.core.errors import ContinuationCollision
from scripts.render.output import write_frame
from scripts.render.parallel import parallel_map
from scripts.utils.config import load_section

logger = logging.getLogger(__name__)

PERIOD_CAP = 12
MOTION_COLUMNS = ["seed_id", "step", "re", "im", "branch_id"]

_DEFAULTS = {
    "period_max": 6,
    "n_points": 64,
}


def motion_config() -> dict:
    return load_section("motion", _DEFAULTS)


@dataclass(frozen=True)
class MotionTrack:
    """One cycle followed along the path; ``cycles[k]`` is the cycle at node k."""

    seed_id: int
    period: int
    itinerary: tuple[int, ...]
    cycles: tuple[np.ndarray, ...]

    @property
    def steps(self) -> int:
        return len(self.cycles)


@dataclass(frozen=True)
class MotionCollision:
    seed_id: int
    step: int
    parameter: complex
    message: str


@dataclass(frozen=True)
class MotionSample:
    path: tuple[complex, ...]
    tracks: tuple[MotionTrack, ...]
    collisions: tuple[MotionCollision, ...] = ()

    @property
    def base_points(self) -> list[complex]:
        """All seeded cycle points at c = 0, on the unit circle."""
        return self.at(0)

    def at(self, step: int) -> list[complex]:
        """Tracked points at path node ``step``; tracks stopped earlier are left out."""
        return [complex(z) for t in self.tracks if t.steps > step for z in t.cycles[step]]

    def frame(self) -> pd.DataFrame:
        rows = [
            (t.seed_id, step, z.real, z.imag, branch)
            for t in self.tracks
            for step, cycle in enumerate(t.cycles)
            for branch, z in enumerate(cycle)
        ]
        return pd.DataFrame(rows, columns=MOTION_COLUMNS)

    def summary(self) -> dict:
        return {
            "steps": len(self.path),
            "seeds": len(self.tracks),
            "base_points": len(self.base_points),
            "complete": sum(t.steps == len(self.path) for t in self.tracks),
            "collisions": len(self.collisions),
        }


def seed_cycles(exp: RationalExp, period_max: int, n_points: int) -> list[tuple[complex, list[int]]]:
    """Cycles on S^1 by increasing period, stopping before ``n_points`` is exceeded."""
    seeds: list[tuple[complex, list[int]]] = []
    total = 0
    for period in range(1, period_max + 1):
        for seed, itinerary in periodic_points_on_circle(exp, period):
            if total + period > n_points:
                return seeds
            seeds.append((seed, itinerary))
            total += period
    return seeds


def _track(task: tuple) -> tuple[Optional[MotionTrack], Optional[MotionCollision]]:
    seed_id, corr, seed, itinerary, path = task
    try:
        cycles = continue_cycle(corr, seed, itinerary, path)
        return MotionTrack(seed_id, len(itinerary), tuple(itinerary), tuple(cycles)), None
    except ContinuationCollision as e:
        collision = MotionCollision(seed_id, e.step, complex(e.parameter), str(e))
    if collision.step == 0:
        return None, collision
    cycles = continue_cycle(corr, seed, itinerary, path[: collision.step])
    return MotionTrack(seed_id, len(itinerary), tuple(itinerary), tuple(cycles)), collision


def branched_motion_sample(
    exp: RationalExp,
    c_path: Sequence[complex],
    n_points: Optional[int] = None,
    period_max: Optional[int] = None,
    workers: Optional[int] = 1,
) -> MotionSample:
    """Continue the periodic points of J_0 along ``c_path``.

    Args:
        exp: Exponent p/q.
        c_path: Parameter nodes; the first must be 0.
        n_points: Cap on the number of seeded points.
        period_max: Largest cycle period seeded, at most 12.
        workers: Process count for continuing seeds; 1 runs in-process.

    Raises:
        ValueError: The path is empty or does not start at 0, or
            ``period_max`` is out of range.
        NewtonDivergence: A continuation step could not be bridged.
    """
    cfg = motion_config()
    period_max = int(period_max or cfg["period_max"])
    n_points = int(n_points or cfg["n_points"])
    path = tuple(complex(c) for c in c_path)
    if not path or path[0] != 0:
        raise ValueError("the parameter path must start at c = 0")
    if not 1 <= period_max <= PERIOD_CAP:
        raise ValueError(f"period_max must lie in 1..{PERIOD_CAP}, got {period_max}")

    corr = PowerCorr(exp, 0j)
    seeds = seed_cycles(exp, period_max, n_points)
    tasks = [(i, corr, seed, itinerary, path) for i, (seed, itinerary) in enumerate(seeds)]
    tracks, collisions = [], []
    for track, collision in parallel_map(_track, tasks, workers):
        if track is not None:
            tracks.append(track)
        if collision is not None:
            logger.info(
                "seed %d branches at step %d (c=%s): %s",
                collision.seed_id, collision.step, collision.parameter, collision.message,
            )
            collisions.append(collision)
    sample = MotionSample(path, tuple(tracks), tuple(collisions))
    logger.info("motion for beta=%s: %s", exp, sample.summary())
    return sample


def write_motion_csv(sample: MotionSample, path: Path | str) -> Path:
    """Rows "seed_id,step,re,im,branch_id"; branch_id is the position in the cycle."""
    return write_frame(sample.frame(), path)
