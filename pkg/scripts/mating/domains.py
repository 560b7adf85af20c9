"""Standard fundamental domains of Cov and J, and the Klein combination check.

Everything here lives in J o Cov coordinates, where the parabolic point is
P = 1. Cov_0 maps the ray (-inf, -2] onto the hyperbola branch
x^2 - y^2/3 = 1, x > 0; the region to its right is the fundamental domain
Delta_Cov. Delta_J is the unbounded side of a circle through 1 and a.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from scripts.core.errors import OutsideDisk
from scripts.core.geometry import Disk, chordal_distance, line_angle_deg
from scripts.utils.config import load_section

logger = logging.getLogger(__name__)

PARABOLIC_POINT = 1 + 0j
TRANSVERSAL_MIN_DEG = 10.0

_DEFAULTS = {
    "near_p_buffer": 1e-3,
    "depth": 24,
    "node_budget": 200_000,
    "cov_t_max": 1e4,
    "cov_samples": 256,
    "j_circle": "tangent",
    "klein_samples": 10_000,
    "klein_tol": 1e-3,
    "seed": 0,
}


def mating_config() -> dict:
    return load_section("mating", _DEFAULTS)


class CircleChoice(str, Enum):
    """How the boundary circle of Delta_J through 1 and a is picked.

    TANGENT centers the circle on the real axis, so it is tangent to the
    hyperbola at P; DIAMETER uses the segment [1, a] as a diameter. The two
    agree for real a.
    """

    TANGENT = "tangent"
    DIAMETER = "diameter"


def check_parameter(a: complex) -> complex:
    """Raises OutsideDisk unless |a - 4| <= 3 and a != 1."""
    a = complex(a)
    if a == 1 or abs(a - 4) > 3 * (1 + 1e-12):
        raise OutsideDisk(f"a = {a} is outside the disk |a - 4| <= 3 (a != 1)")
    return a


def in_cov_domain(z: complex) -> bool:
    """Open Delta_Cov: right of the hyperbola branch x^2 - y^2/3 = 1."""
    x, y = z.real, z.imag
    return x > 0 and x * x - y * y / 3 > 1


def in_cov_closure(z: complex) -> bool:
    x, y = z.real, z.imag
    return x > 0 and x * x - y * y / 3 >= 1


def j_circle(a: complex, choice: CircleChoice = CircleChoice.TANGENT) -> Disk:
    a = complex(a)
    if choice is CircleChoice.DIAMETER:
        return Disk((1 + a) / 2, abs(a - 1) / 2)
    radius = abs(a - 1) ** 2 / (2 * (a - 1).real)
    return Disk(complex(1 + radius, 0), radius)


def cov_boundary(t_max: float, samples: int) -> np.ndarray:
    """Polyline of Cov_0((-t_max, -2]): lower arc, P, upper arc.

    w(t) = (-t +/- i sqrt(3t^2 - 12))/2; t = -2 gives w = 1.
    """
    t = -np.geomspace(2.0, t_max, samples)
    upper = (-t + 1j * np.sqrt(np.maximum(3 * t * t - 12, 0.0))) / 2
    return np.concatenate([np.conj(upper[::-1]), upper[1:]])


@dataclass(frozen=True)
class FundamentalDomains:
    """Delta_Cov and Delta_J for one parameter a.

    ``cov_right`` says Delta_Cov lies right of the hyperbola; ``j_outside``
    says Delta_J is the unbounded side of ``j_circle``.
    """

    a: complex
    cov_boundary: np.ndarray
    j_circle: Disk
    cov_right: bool = True
    j_outside: bool = True

    def in_cov(self, z: Optional[complex]) -> bool:
        if z is None:
            return False
        return in_cov_domain(z) == self.cov_right

    def in_j(self, z: Optional[complex]) -> bool:
        if z is None:
            return self.j_outside
        outside = abs(z - self.j_circle.center) > self.j_circle.radius
        return outside == self.j_outside

    def covers(self, z: Optional[complex]) -> bool:
        return self.in_cov(z) or self.in_j(z)

    def with_circle(self, circle: Disk) -> "FundamentalDomains":
        return FundamentalDomains(self.a, self.cov_boundary, circle, self.cov_right, self.j_outside)


@dataclass(frozen=True)
class Transversality:
    """Angles in degrees between boundary tangents at P and the parabolic axis.

    ``axis_deg`` is None when the quadratic term at P vanishes and the axis
    is undefined.
    """

    axis_deg: Optional[float]
    cov_deg: Optional[float]
    j_deg: Optional[float]

    @property
    def ok(self) -> bool:
        return all(angle is None or angle >= TRANSVERSAL_MIN_DEG for angle in (self.cov_deg, self.j_deg))


def transversality(domains: FundamentalDomains) -> Transversality:
    """Compare boundary tangents at P with the attracting-repelling axis.

    Near P the fixing branch is f(1 + h) = 1 + h + b h^2 with
    b = 1/3 + 2/(1 - a); the repelling direction is h with arg h = -arg b.
    """
    b = 1 / 3 + 2 / (1 - domains.a)
    if abs(b) <= 1e-12:
        logger.warning("a = %s: quadratic term at P vanishes, no parabolic axis", domains.a)
        return Transversality(None, None, None)
    axis = -cmath.phase(b)
    cov_tangent = math.pi / 2
    j_tangent = cmath.phase(PARABOLIC_POINT - domains.j_circle.center) + math.pi / 2
    return Transversality(
        math.degrees(axis),
        line_angle_deg(cov_tangent, axis),
        line_angle_deg(j_tangent, axis),
    )


def standard_domains(
    a: complex,
    t_max: Optional[float] = None,
    samples: Optional[int] = None,
    choice: Optional[CircleChoice] = None,
) -> FundamentalDomains:
    """Standard domains for a in the Klein disk.

    Raises:
        OutsideDisk: |a - 4| > 3 or a = 1.
    """
    a = check_parameter(a)
    cfg = mating_config()
    choice = CircleChoice(choice or cfg["j_circle"])
    domains = FundamentalDomains(
        a,
        cov_boundary(float(t_max or cfg["cov_t_max"]), int(samples or cfg["cov_samples"])),
        j_circle(a, choice),
    )
    angles = transversality(domains)
    if not angles.ok:
        logger.warning(
            "boundaries at P are nearly tangent to the parabolic axis (cov %.1f deg, J %.1f deg)",
            angles.cov_deg, angles.j_deg,
        )
    logger.debug("domains for a=%s: J circle %s, angles %s", a, domains.j_circle, angles)
    return domains


@dataclass(frozen=True)
class KleinReport:
    samples: int
    covered_fraction: float
    max_uncovered_distance: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_uncovered_distance <= self.tolerance

    def summary(self) -> dict:
        return {
            "samples": self.samples,
            "covered_fraction": self.covered_fraction,
            "max_uncovered_distance": self.max_uncovered_distance,
            "passed": self.passed,
        }


def sphere_points(samples: int, seed: int) -> list[Optional[complex]]:
    """Uniform points on the Riemann sphere, projected from the north pole."""
    rng = np.random.default_rng(seed)
    xyz = rng.normal(size=(samples, 3))
    xyz /= np.linalg.norm(xyz, axis=1, keepdims=True)
    points: list[Optional[complex]] = []
    for x, y, h in xyz:
        points.append(None if h >= 1.0 else complex(x, y) / (1.0 - h))
    return points


def klein_check(
    domains: FundamentalDomains,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    tolerance: Optional[float] = None,
) -> KleinReport:
    """Sample the sphere and test Delta_Cov u Delta_J = sphere minus P.

    Passes when every uncovered sample lies within ``tolerance`` (chordal)
    of P. No samples is a vacuous pass.
    """
    cfg = mating_config()
    count = int(cfg["klein_samples"] if samples is None else samples)
    tol = float(cfg["klein_tol"] if tolerance is None else tolerance)
    if count <= 0:
        logger.warning("klein check with no samples passes vacuously")
        return KleinReport(0, 1.0, 0.0, tol)
    covered = 0
    worst = 0.0
    for z in sphere_points(count, int(cfg["seed"] if seed is None else seed)):
        if domains.covers(z):
            covered += 1
        else:
            worst = max(worst, chordal_distance(z, PARABOLIC_POINT))
    report = KleinReport(count, covered / count, worst, tol)
    logger.info("klein check for a=%s: %s", domains.a, report.summary())
    return report
