"""Yoccoz disks in the tau = log(multiplier) plane.

An inequality Re tau >= M |tau - 2 pi i p/q|^2 confines tau to the closed disk
with center 2 pi i p/q + 1/(2M) and radius 1/(2M), tangent to the imaginary
axis at 2 pi i p/q. Two families of bounds M are supported:

    mating     M = q^2 / (4 p log(ceil(q/p) + 1))   (p replaced by q - p past 1/2)
    classical  M = m q / (2 log d)
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Optional

import pandas as pd

from scripts.combinatorics.sturmian import check_fraction
from scripts.core.geometry import Disk
from scripts.render.output import write_frame

logger = logging.getLogger(__name__)

DISK_COLUMNS = ["p", "q", "center_re", "center_im", "radius"]


class DiskVariant(str, Enum):
    MATING = "mating"
    CLASSICAL = "classical"


@dataclass(frozen=True)
class YoccozDisk:
    p: int
    q: int
    disk: Disk

    @property
    def center(self) -> complex:
        return self.disk.center

    @property
    def radius(self) -> float:
        return self.disk.radius

    def contains(self, tau: complex) -> bool:
        return self.disk.contains(tau)

    def margin(self, tau: complex) -> float:
        return self.disk.margin(tau)


def mating_bound(p: int, q: int) -> float:
    check_fraction(p, q)
    if 2 * p > q:
        p = q - p
    return q * q / (4 * p * math.log(-(-q // p) + 1))


def classical_bound(q: int, degree: int = 2, m: int = 1) -> float:
    if degree < 2:
        raise ValueError(f"degree must be >= 2, got {degree}")
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    return m * q / (2 * math.log(degree))


def yoccoz_disk(
    p: int,
    q: int,
    variant: DiskVariant = DiskVariant.MATING,
    degree: int = 2,
    m: int = 1,
) -> YoccozDisk:
    """The disk allowed for rotation number p/q.

    Raises:
        BadFraction: p/q is not reduced or not in (0, 1).
    """
    check_fraction(p, q)
    if variant is DiskVariant.MATING:
        bound = mating_bound(p, q)
    else:
        bound = classical_bound(q, degree, m)
    radius = 1.0 / (2.0 * bound)
    center = complex(radius, 2.0 * math.pi * p / q)
    return YoccozDisk(p, q, Disk(center, radius))


def coprime_fractions(q_max: int, upper: Fraction = Fraction(1, 2)) -> Iterator[tuple[int, int]]:
    """Reduced p/q in (0, upper] with 2 <= q <= q_max, by q then p."""
    for q in range(2, q_max + 1):
        for p in range(1, q):
            if math.gcd(p, q) == 1 and Fraction(p, q) <= upper:
                yield p, q


def disk_family(
    q_max: int,
    extra: Iterable[tuple[int, int]] = (),
    variant: DiskVariant = DiskVariant.MATING,
    degree: int = 2,
    m: int = 1,
) -> list[YoccozDisk]:
    """Disks for all p/q in (0, 1/2] with q <= q_max plus ``extra``, ordered by q then p."""
    if q_max < 2:
        raise ValueError(f"q_max must be >= 2, got {q_max}")
    pairs = set(coprime_fractions(q_max))
    for p, q in extra:
        check_fraction(p, q)
        pairs.add((p, q))
    ordered = sorted(pairs, key=lambda pq: (pq[1], pq[0]))
    return [yoccoz_disk(p, q, variant, degree, m) for p, q in ordered]


def disk_frame(disks: Iterable[YoccozDisk]) -> pd.DataFrame:
    rows = [(d.p, d.q, d.center.real, d.center.imag, d.radius) for d in disks]
    return pd.DataFrame(rows, columns=DISK_COLUMNS)


def emit_disk_family(
    q_max: int,
    extra: Iterable[tuple[int, int]] = (),
    variant: DiskVariant = DiskVariant.MATING,
    path: Optional[Path | str] = None,
    degree: int = 2,
    m: int = 1,
) -> pd.DataFrame:
    """Disk family as a frame, written as CSV when ``path`` is given."""
    frame = disk_frame(disk_family(q_max, extra, variant, degree, m))
    logger.info("%d %s disks for q <= %d", len(frame), variant.value, q_max)
    if path is not None:
        write_frame(frame, path)
    return frame
