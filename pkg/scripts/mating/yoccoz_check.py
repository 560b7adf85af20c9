"""Numerical Yoccoz inequality at repelling fixed points of F_a."""

from __future__ import annotations

import cmath
import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional

import pandas as pd

from scripts.combinatorics.yoccoz_disks import DiskVariant, coprime_fractions, yoccoz_disk
from scripts.core.correspondence import TWO_PI, Coords, MatingCorr, phi_a_inverse
from scripts.core.errors import NoRepellingFixedPoint
from scripts.core.fixed_points import FixedPointClass, fixed_points
from scripts.mating.domains import check_parameter, in_cov_domain
from scripts.render.output import write_frame

logger = logging.getLogger(__name__)

YOCCOZ_COLUMNS = ["re_fp", "im_fp", "re_tau", "im_tau", "p", "q", "margin"]


@dataclass(frozen=True)
class AdmissibleDisk:
    """A disk for p/q containing the log branch ``tau``."""

    p: int
    q: int
    tau: complex
    margin: float


@dataclass(frozen=True)
class YoccozCheck:
    fixed_point: complex
    multiplier: complex
    tau: complex
    admissible: tuple[AdmissibleDisk, ...]

    @property
    def passed(self) -> bool:
        return bool(self.admissible)

    @property
    def admissible_pq(self) -> list[tuple[int, int]]:
        return [(d.p, d.q) for d in self.admissible]

    def summary(self) -> dict:
        return {
            "fixed_point": [self.fixed_point.real, self.fixed_point.imag],
            "multiplier": [self.multiplier.real, self.multiplier.imag],
            "admissible": [f"{p}/{q}" for p, q in self.admissible_pq],
            "passed": self.passed,
        }


def check_multiplier(fixed_point: complex, multiplier: complex, q_max: int) -> Optional[YoccozCheck]:
    """Every p/q (q <= q_max) whose mating disk holds a branch of log(multiplier).

    Branches are Log(multiplier) + 2 pi i k for |k| <= q_max. Returns None
    for a non-repelling multiplier.
    """
    multiplier = complex(multiplier)
    if multiplier == 0 or abs(multiplier) <= 1.0:
        logger.debug("multiplier %s at %s is not repelling", multiplier, fixed_point)
        return None
    principal = cmath.log(multiplier)
    fractions = list(coprime_fractions(q_max, upper=Fraction(1)))
    admissible = []
    for k in range(-q_max, q_max + 1):
        tau = principal + TWO_PI * k * 1j
        for p, q in fractions:
            disk = yoccoz_disk(p, q, DiskVariant.MATING)
            if disk.contains(tau):
                admissible.append(AdmissibleDisk(p, q, tau, disk.margin(tau)))
    admissible.sort(key=lambda d: (d.q, d.p))
    return YoccozCheck(complex(fixed_point), multiplier, principal, tuple(admissible))


def yoccoz_verify(a: complex, q_max: int = 8) -> list[YoccozCheck]:
    """Yoccoz checks at the repelling fixed points of F_a on the Lambda_- side.

    Fixed points are found in J o Cov coordinates and reported in the original
    ones. Points inside Delta_Cov, critical fixing branches and P itself are
    skipped. With nothing left the result is empty and the condition is
    logged, not raised.

    Raises:
        OutsideDisk: a is outside the Klein disk.
    """
    a = check_parameter(a)
    if q_max < 2:
        raise ValueError(f"q_max must be >= 2, got {q_max}")
    checks = []
    for fp in fixed_points(MatingCorr(a, Coords.COVJ)):
        if fp.kind is not FixedPointClass.REPELLING:
            logger.debug("skipping %s fixed point %s", fp.kind.value, fp.point)
            continue
        if fp.multiplier is None:
            logger.info("skipping fixed point %s: fixing branch is critical", fp.point)
            continue
        if in_cov_domain(fp.point):
            logger.info("skipping fixed point %s: it lies in Lambda_+", fp.point)
            continue
        check = check_multiplier(phi_a_inverse(a, fp.point), fp.multiplier, q_max)
        if check is not None:
            checks.append(check)
    if not checks:
        logger.warning("%s", NoRepellingFixedPoint(f"a = {a}: no repelling fixed point on the Lambda_- side"))
        return []
    failed = [c for c in checks if not c.passed]
    if failed:
        logger.warning("a = %s: %d fixed points lie in no disk with q <= %d", a, len(failed), q_max)
    logger.info("a = %s: %d Yoccoz checks, %d passed", a, len(checks), len(checks) - len(failed))
    return checks


def yoccoz_frame(checks: Iterable[YoccozCheck]) -> pd.DataFrame:
    """One row per admissible disk."""
    rows = [
        (c.fixed_point.real, c.fixed_point.imag, d.tau.real, d.tau.imag, d.p, d.q, d.margin)
        for c in checks
        for d in c.admissible
    ]
    return pd.DataFrame(rows, columns=YOCCOZ_COLUMNS)


def write_yoccoz_csv(checks: Iterable[YoccozCheck], path: Path | str) -> Path:
    return write_frame(yoccoz_frame(checks), path)
