"""Fixed points, cycles and multipliers for both correspondence families."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

import numpy as np

from scripts.core.correspondence import (
    Coords,
    MatingCorr,
    PowerCorr,
    cov_derivative,
    involution_j,
    j_derivative,
    power_relation_residual,
)
from scripts.core.polyroots import polynomial_roots

logger = logging.getLogger(__name__)

PARABOLIC_TOL = 1e-9
# |u + 2v| (relative) below this means the fixing branch is critical.
CRITICAL_TOL = 1e-9


class FixedPointClass(str, Enum):
    ATTRACTING = "attracting"
    REPELLING = "repelling"
    PARABOLIC = "parabolic"
    SUPERATTRACTING = "superattracting"


@dataclass(frozen=True)
class FixedPoint:
    """A fixed point with the multiplier of the branch fixing it.

    ``multiplier`` is None when that branch has an infinite derivative (the
    point is a critical value of the inverse branch); such points are
    classed as repelling.
    """

    point: complex
    multiplier: Optional[complex]
    kind: FixedPointClass
    multiplicity: int = 1

    def as_dict(self) -> dict:
        return {
            "re": self.point.real,
            "im": self.point.imag,
            "multiplier_re": None if self.multiplier is None else self.multiplier.real,
            "multiplier_im": None if self.multiplier is None else self.multiplier.imag,
            "class": self.kind.value,
            "multiplicity": self.multiplicity,
        }


@dataclass(frozen=True)
class Cycle:
    points: tuple[complex, ...]
    multiplier: complex

    @property
    def period(self) -> int:
        return len(self.points)


def classify_multiplier(multiplier: Optional[complex]) -> FixedPointClass:
    if multiplier is None:
        return FixedPointClass.REPELLING
    if multiplier == 0:
        return FixedPointClass.SUPERATTRACTING
    modulus = abs(multiplier)
    if abs(modulus - 1.0) <= PARABOLIC_TOL:
        return FixedPointClass.PARABOLIC
    return FixedPointClass.ATTRACTING if modulus < 1.0 else FixedPointClass.REPELLING


# ---------------------------------------------------------------------------
# Fixed-point polynomials
# ---------------------------------------------------------------------------

def power_fixed_point_poly(corr: PowerCorr) -> np.ndarray:
    """Coefficients of z^p - (z - c)^q, highest degree first."""
    monomial = np.zeros(corr.p + 1, dtype=complex)
    monomial[0] = 1.0
    shifted = np.poly(np.full(corr.q, corr.c, dtype=complex))
    return np.polysub(monomial, shifted)


def mating_fixed_point_poly(corr: MatingCorr) -> np.ndarray:
    """The quartic obtained by putting w = z into the defining relation."""
    a = complex(corr.a)
    if corr.coords is Coords.ORIGINAL:
        nu, du = np.array([a, 1]), np.array([1, 1], dtype=complex)
        nv, dv = np.array([a, -1]), np.array([1, -1], dtype=complex)
        terms = [
            np.polymul(np.polymul(nu, nu), np.polymul(dv, dv)),
            np.polymul(np.polymul(nu, nv), np.polymul(du, dv)),
            np.polymul(np.polymul(nv, nv), np.polymul(du, du)),
            -3 * np.polymul(np.polymul(du, du), np.polymul(dv, dv)),
        ]
    else:
        s = 1 + a
        num, den = np.array([s, -2 * a]), np.array([2, -s], dtype=complex)
        z = np.array([1, 0], dtype=complex)
        terms = [
            np.polymul(np.polymul(z, z), np.polymul(den, den)),
            np.polymul(np.polymul(z, num), den),
            np.polymul(num, num),
            -3 * np.polymul(den, den),
        ]
    total = np.zeros(5, dtype=complex)
    for term in terms:
        total = np.polyadd(total, term)
    return total


# ---------------------------------------------------------------------------
# Multipliers of the fixing branch
# ---------------------------------------------------------------------------

def power_multiplier(corr: PowerCorr, z: complex) -> complex:
    """(p/q)(z - c)/z for the branch with w = z; 0 at the critical point."""
    if z == 0:
        return 0j
    return (corr.p / corr.q) * (z - corr.c) / z


def mating_multiplier(corr: MatingCorr, z: complex) -> Optional[complex]:
    a = complex(corr.a)
    if corr.coords is Coords.ORIGINAL:
        u = (a * z + 1) / (z + 1)
        v = (a * z - 1) / (z - 1)
        den = u + 2 * v
        if abs(den) <= CRITICAL_TOL * max(1.0, abs(u), abs(v)):
            return None
        return (2 * u + v) / den * (z - 1) ** 2 / (z + 1) ** 2
    w_cov = involution_j(a, z)
    inner = cov_derivative(z, w_cov)
    if inner is None or abs(z + 2 * w_cov) <= CRITICAL_TOL * max(1.0, abs(z)):
        return None
    return inner * j_derivative(a, w_cov)


def fixed_points(corr: Union[PowerCorr, MatingCorr]) -> list[FixedPoint]:
    """All fixed points of ``corr`` with the multiplier of the fixing branch.

    Raises:
        RootFindingFailure: The fixed-point polynomial did not converge.
    """
    if isinstance(corr, PowerCorr):
        roots = polynomial_roots(power_fixed_point_poly(corr))
        multiplier_of = lambda z: power_multiplier(corr, z)  # noqa: E731
    else:
        roots = polynomial_roots(mating_fixed_point_poly(corr))
        multiplier_of = lambda z: mating_multiplier(corr, z)  # noqa: E731

    points = []
    for z, multiplicity in roots:
        multiplier = multiplier_of(z)
        points.append(FixedPoint(z, multiplier, classify_multiplier(multiplier), multiplicity))
    logger.debug("fixed points of %s: %s", corr, [(fp.point, fp.kind.value) for fp in points])
    return points


def make_cycle(corr: PowerCorr, points: list[complex], tol: float = 1e-9) -> Cycle:
    """Multiplier of a cycle z_0 -> z_1 -> ... -> z_0 of the power family.

    Raises:
        ValueError: A consecutive pair is not related by the correspondence.
    """
    if not points:
        raise ValueError("a cycle needs at least one point")
    multiplier = 1 + 0j
    n = len(points)
    for i, z in enumerate(points):
        w = points[(i + 1) % n]
        if power_relation_residual(corr, z, w) > tol:
            raise ValueError(f"points {i} and {(i + 1) % n} are not related by the correspondence")
        multiplier *= 0j if z == 0 else (corr.p / corr.q) * (w - corr.c) / z
    return Cycle(tuple(complex(z) for z in points), multiplier)
