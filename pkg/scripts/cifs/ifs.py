"""Conformal IFS for the dual Julia set of z^{p/q} + c near c = 0.

For small c != 0 there is a radius rho with

    rho^beta < |c|             (D1 = disk(c, rho^beta) avoids 0)
    |c| + rho^beta < rho       (D1 is compactly inside D = disk(0, rho))

The q forward branches map D into D1, are single valued on D1 and contract
with ratio at most r = beta (|c| + rho^beta)^(beta - 1). Their attractor is
the dual Julia set J*_c.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Optional

import numpy as np
import pandas as pd

from scripts.core.correspondence import PowerCorr, RationalExp
from scripts.core.errors import CorrDynError, EscapedD1, NoValidRadius
from scripts.core.geometry import Disk
from scripts.render.output import write_frame
from scripts.utils.config import load_section

logger = logging.getLogger(__name__)

CONTAINMENT_EPS = 1e-12
UNIFORM_TOL = 1e-12

ATTRACTOR_COLUMNS = ["gen", "re", "im"]
DIMENSION_COLUMNS = ["beta_p", "beta_q", "c_re", "c_im", "rho", "r", "s_star"]

_DEFAULTS = {
    "rho_steps": 64,
    "dedupe_tol": 1e-12,
    "max_generations": 20,
    "max_points": 1 << 20,
    "dual_tolerance": 1e-6,
}


def cifs_config() -> dict:
    return load_section("cifs", _DEFAULTS)


@dataclass(frozen=True)
class CifsData:
    """Disks and contraction bound of the IFS at one parameter."""

    corr: PowerCorr
    outer: Disk
    image: Disk
    contraction: float

    def __post_init__(self) -> None:
        if not 0.0 < self.contraction < 1.0:
            raise ValueError(f"contraction must lie in (0, 1), got {self.contraction}")

    @property
    def branch_count(self) -> int:
        return self.corr.q

    @property
    def rho(self) -> float:
        return self.outer.radius

    def summary(self) -> dict:
        return {
            "beta": str(self.corr.exp),
            "c": [self.corr.c.real, self.corr.c.imag],
            "rho": self.rho,
            "d1_radius": self.image.radius,
            "r": self.contraction,
            "branches": self.branch_count,
        }


@dataclass(frozen=True)
class AttractorSample:
    points: np.ndarray
    generation: int

    def __len__(self) -> int:
        return len(self.points)


def build_cifs(exp: RationalExp, c: complex, rho_steps: Optional[int] = None) -> CifsData:
    """Pick rho on a geometric grid maximising the smaller containment margin.

    Raises:
        ValueError: c = 0, where J*_0 = {0} and no IFS is needed.
        NoValidRadius: No grid radius meets both constraints with r < 1.
    """
    c = complex(c)
    if c == 0:
        raise ValueError("the IFS exists only for c != 0")
    beta = exp.beta
    size = abs(c)
    steps = int(rho_steps or cifs_config()["rho_steps"])
    grid = np.geomspace(0.5 * size ** (1.0 / beta), 1.0, steps)

    best: Optional[tuple[float, float]] = None
    for rho in grid:
        image_radius = rho**beta
        margin = min(rho - size - image_radius, size - image_radius)
        if margin <= CONTAINMENT_EPS:
            continue
        if beta * (size + image_radius) ** (beta - 1) >= 1.0:
            continue
        if best is None or margin > best[1]:
            best = (float(rho), margin)
    if best is None:
        raise NoValidRadius(f"no radius in [{grid[0]:.3g}, {grid[-1]:.3g}] works for beta={exp}, c={c}")

    rho = best[0]
    image_radius = rho**beta
    cifs = CifsData(
        PowerCorr(exp, c),
        Disk(0j, rho),
        Disk(c, image_radius),
        beta * (size + image_radius) ** (beta - 1),
    )
    logger.debug("CIFS for beta=%s c=%s: %s", exp, c, cifs.summary())
    return cifs


def branch_images(cifs: CifsData, points: np.ndarray) -> np.ndarray:
    """Images of ``points`` under the q branches, shape (q, len(points)).

    On D1 the branches are c + exp((p L(z) + 2 pi i j)/q) with
    L(z) = Log c + Log(z/c), which is continuous there since Re(z/c) > 0.
    """
    corr = cifs.corr
    log_z = cmath.log(corr.c) + np.log(points / corr.c)
    turns = 2j * np.pi * np.arange(corr.q)[:, None]
    return corr.c + np.exp((corr.p * log_z[None, :] + turns) / corr.q)


def uniform_contraction(cifs: CifsData, points: np.ndarray, images: np.ndarray) -> float:
    """Largest branch derivative modulus, checking it is branch independent.

    |f_j'(z)| = (p/q)|f_j(z) - c|/|z| must equal beta |z|^(beta - 1) for
    every j.
    """
    beta = cifs.corr.beta
    moduli = beta * np.abs(images - cifs.corr.c) / np.abs(points)[None, :]
    expected = beta * np.abs(points) ** (beta - 1)
    deviation = float(np.max(np.abs(moduli - expected[None, :]) / expected[None, :]))
    if deviation > UNIFORM_TOL:
        raise CorrDynError(f"branch derivatives differ by {deviation:.3g} (relative)")
    return float(np.max(moduli))


def _dedupe(points: np.ndarray, tol: float) -> np.ndarray:
    keys = np.stack([np.round(points.real / tol), np.round(points.imag / tol)], axis=1)
    _, first = np.unique(keys, axis=0, return_index=True)
    return points[np.sort(first)]


def hutchinson_generations(cifs: CifsData, seed: complex, generations: int) -> Iterator[AttractorSample]:
    """Generations 0..``generations`` of the Hutchinson operator from ``seed``.

    Raises:
        ValueError: ``seed`` is not in D1 or ``generations`` is negative.
        EscapedD1: A branch image left D1.
    """
    if generations < 0:
        raise ValueError("generations must be >= 0")
    if not cifs.image.contains(seed):
        raise ValueError(f"seed {seed} is not in D1 {cifs.image}")
    tol = float(cifs_config()["dedupe_tol"])
    points = np.array([complex(seed)])
    yield AttractorSample(points, 0)
    for gen in range(1, generations + 1):
        images = branch_images(cifs, points)
        sup = uniform_contraction(cifs, points, images)
        if sup > cifs.contraction * (1 + UNIFORM_TOL):
            raise CorrDynError(f"generation {gen}: derivative {sup:.6g} exceeds r = {cifs.contraction:.6g}")
        flat = images.ravel()
        outside = np.abs(flat - cifs.image.center) > cifs.image.radius + CONTAINMENT_EPS
        if np.any(outside):
            raise EscapedD1(f"generation {gen}: {int(np.count_nonzero(outside))} images left D1")
        points = _dedupe(flat, tol)
        if len(points) < len(flat):
            logger.debug("generation %d: %d of %d points merged", gen, len(flat) - len(points), len(flat))
        yield AttractorSample(points, gen)


def hutchinson_iterate(cifs: CifsData, corr: PowerCorr, seed: complex, generations: int) -> AttractorSample:
    """The ``generations``-th Hutchinson image of ``{seed}`` under the branches of ``corr``.

    Raises:
        ValueError: ``cifs`` was built for another correspondence.
    """
    if corr != cifs.corr:
        raise ValueError(f"CIFS was built for {cifs.corr}, not {corr}")
    sample = None
    for sample in hutchinson_generations(cifs, seed, generations):
        pass
    return sample


def hausdorff_upper_bound(cifs: CifsData) -> float:
    """s* solving q r^s = 1, an upper bound for dim_H of the attractor."""
    return math.log(cifs.branch_count) / math.log(1.0 / cifs.contraction)


def generations_for(cifs: CifsData, tolerance: float) -> int:
    """Smallest g with 2 radius(D1) r^g < tolerance, capped by config."""
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    cfg = cifs_config()
    needed = math.log(tolerance / (2 * cifs.image.radius)) / math.log(cifs.contraction)
    gens = max(0, math.floor(needed) + 1)
    cap = int(cfg["max_generations"])
    if cifs.branch_count > 1:
        cap = min(cap, int(math.log(int(cfg["max_points"])) / math.log(cifs.branch_count)))
    if gens > cap:
        logger.warning("tolerance %g needs %d generations; stopping at %d", tolerance, gens, cap)
        return cap
    return gens


def dual_julia_points(exp: RationalExp, c: complex, tolerance: Optional[float] = None) -> set[complex]:
    """Points within ``tolerance`` of every point of J*_c, and inside its hull.

    J*_0 = {0}. Otherwise the Hutchinson operator is iterated from c until
    the cylinder diameters 2 radius(D1) r^g drop below ``tolerance``.

    Raises:
        NoValidRadius: c is too far from 0 for the IFS.
    """
    c = complex(c)
    if c == 0:
        return {0j}
    tol = float(cifs_config()["dual_tolerance"] if tolerance is None else tolerance)
    cifs = build_cifs(exp, c)
    sample = hutchinson_iterate(cifs, cifs.corr, c, generations_for(cifs, tol))
    logger.info("J* for beta=%s c=%s: %d points at generation %d", exp, c, len(sample), sample.generation)
    return {complex(z) for z in sample.points}


def attractor_frame(samples: Iterable[AttractorSample]) -> pd.DataFrame:
    rows = [(s.generation, z.real, z.imag) for s in samples for z in s.points]
    return pd.DataFrame(rows, columns=ATTRACTOR_COLUMNS)


def write_attractor_csv(samples: Iterable[AttractorSample], path: Path | str) -> Path:
    return write_frame(attractor_frame(samples), path)


def dimension_frame(reports: Iterable[CifsData]) -> pd.DataFrame:
    rows = [
        (
            cifs.corr.p, cifs.corr.q, cifs.corr.c.real, cifs.corr.c.imag,
            cifs.rho, cifs.contraction, hausdorff_upper_bound(cifs),
        )
        for cifs in reports
    ]
    return pd.DataFrame(rows, columns=DIMENSION_COLUMNS)


def write_dimension_csv(reports: Iterable[CifsData], path: Path | str) -> Path:
    """One row per IFS: exponent, parameter, rho, r and s*."""
    return write_frame(dimension_frame(reports), path)
