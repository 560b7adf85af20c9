"""Branch algebra for the two correspondence families.

Power maps ``(w - c)^q = z^p`` (written z^{p/q} + c) and the modular-group
matings F_a, either in the original coordinates

    ((aw - 1)/(w - 1))^2 + ((aw - 1)/(w - 1))((az + 1)/(z + 1))
        + ((az + 1)/(z + 1))^2 = 3

or in the conjugated form J o Cov, where Cov solves z^2 + zw + w^2 = 3 and J is
the Mobius involution fixing 1 and a. Complex numbers are plain ``complex``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from scripts.core.errors import PoleInput

TWO_PI = 2.0 * math.pi

# |12 - 3u^2| below this (relative) counts as a branch point of Cov.
BRANCH_POINT_TOL = 1e-12


@dataclass(frozen=True)
class RationalExp:
    """Exponent beta = p/q. Kept unreduced: z^{4/2} is not z^2."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or not isinstance(self.q, int):
            raise ValueError("p and q must be integers")
        if self.q < 1:
            raise ValueError("q must be >= 1")
        if self.p <= self.q:
            raise ValueError(f"p must exceed q (beta > 1), got {self.p}/{self.q}")

    @property
    def beta(self) -> float:
        return self.p / self.q

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


@dataclass(frozen=True)
class PowerCorr:
    """The correspondence z -> w with (w - c)^q = z^p."""

    exp: RationalExp
    c: complex = 0j

    @property
    def p(self) -> int:
        return self.exp.p

    @property
    def q(self) -> int:
        return self.exp.q

    @property
    def beta(self) -> float:
        return self.exp.beta

    def with_c(self, c: complex) -> "PowerCorr":
        return PowerCorr(self.exp, complex(c))


class Coords(str, Enum):
    ORIGINAL = "original"
    COVJ = "covj"


@dataclass(frozen=True)
class MatingCorr:
    """The mating F_a in the chosen coordinate system."""

    a: complex
    coords: Coords = Coords.ORIGINAL

    def __post_init__(self) -> None:
        if self.a == 1:
            raise ValueError("the mating parameter a must differ from 1")

    @property
    def parabolic_point(self) -> complex:
        """P: 0 in original coordinates, 1 after conjugation."""
        return 0j if self.coords is Coords.ORIGINAL else 1 + 0j


@dataclass(frozen=True)
class BranchImage:
    value: complex
    derivative: Optional[complex]  # None marks "undefined at critical point"

    @property
    def critical(self) -> bool:
        return self.derivative is None


@dataclass(frozen=True)
class BranchSet:
    """All images of ``source`` under a correspondence, in branch order."""

    source: complex
    images: tuple[BranchImage, ...]
    branch_point: bool = False

    @property
    def values(self) -> list[complex]:
        return [img.value for img in self.images]

    def __len__(self) -> int:
        return len(self.images)

    def nearest(self, target: complex) -> tuple[int, BranchImage]:
        """Index and image closest to ``target``."""
        index = min(range(len(self.images)), key=lambda k: abs(self.images[k].value - target))
        return index, self.images[index]


# ---------------------------------------------------------------------------
# Power family
# ---------------------------------------------------------------------------

def root_set(zeta: complex, num: int, den: int) -> list[complex]:
    """The ``den`` values of (zeta^num)^(1/den), sorted by argument in [0, 2pi).

    The lower half-plane is handled as the conjugate of the upper one, so the
    root set of conj(zeta) is exactly the conjugate of the root set of zeta.
    """
    if zeta == 0:
        return [0j]
    flip = zeta.imag < 0
    x, y = zeta.real, abs(zeta.imag)
    modulus = math.hypot(x, y) ** (num / den)
    start = (num * math.atan2(y, x)) % TWO_PI
    if start >= TWO_PI:
        start = 0.0
    start /= den
    roots = [cmath.rect(modulus, start + TWO_PI * k / den) for k in range(den)]
    if flip:
        roots = [r.conjugate() for r in roots]
        roots = roots[:1] + roots[:0:-1] if start == 0.0 else roots[::-1]
    return roots


def power_images(z: complex, c: complex, p: int, q: int) -> list[complex]:
    """Forward images of z without derivative bookkeeping (hot path)."""
    if z == 0:
        return [c]
    return [c + r for r in root_set(z, p, q)]


def power_forward(corr: PowerCorr, z: complex) -> BranchSet:
    """The q images c + (z^p)^(1/q) with derivatives (p/q)(w - c)/z."""
    z = complex(z)
    if z == 0:
        return BranchSet(z, (BranchImage(corr.c, None),))
    ratio = corr.p / corr.q
    images = tuple(
        BranchImage(corr.c + r, ratio * r / z) for r in root_set(z, corr.p, corr.q)
    )
    return BranchSet(z, images)


def power_backward(corr: PowerCorr, w: complex) -> BranchSet:
    """The p solutions z of z^p = (w - c)^q; w = c gives the critical point 0."""
    w = complex(w)
    shifted = w - corr.c
    if shifted == 0:
        return BranchSet(w, (BranchImage(0j, None),))
    ratio = corr.q / corr.p
    images = tuple(
        BranchImage(z, ratio * z / shifted) for z in root_set(shifted, corr.q, corr.p)
    )
    return BranchSet(w, images)


def power_relation_residual(corr: PowerCorr, z: complex, w: complex) -> float:
    """|(w - c)^q - z^p| scaled by max(1, |z|^p)."""
    return abs((w - corr.c) ** corr.q - z ** corr.p) / max(1.0, abs(z) ** corr.p)


# ---------------------------------------------------------------------------
# Mating family
# ---------------------------------------------------------------------------

def phi_a(a: complex, z: complex) -> complex:
    """Coordinate change (az + 1)/(z + 1) from original to J o Cov coordinates."""
    if z == -1:
        raise PoleInput("phi_a has a pole at z = -1")
    return (a * z + 1) / (z + 1)


def phi_a_inverse(a: complex, zeta: complex) -> complex:
    if zeta == a:
        raise PoleInput("phi_a^-1 has a pole at zeta = a")
    return (zeta - 1) / (a - zeta)


def involution_j(a: complex, zeta: complex) -> complex:
    """J(zeta) = ((1+a)zeta - 2a)/(2zeta - (1+a)), the involution fixing 1 and a."""
    s = 1 + a
    den = 2 * zeta - s
    if den == 0:
        raise PoleInput("J maps (1+a)/2 to infinity")
    return (s * zeta - 2 * a) / den


def j_derivative(a: complex, zeta: complex) -> complex:
    s = 1 + a
    return -((1 - a) ** 2) / (2 * zeta - s) ** 2


def cov_images(z: complex) -> tuple[complex, complex, bool]:
    """Both solutions w of z^2 + zw + w^2 = 3, plus a branch-point flag."""
    disc = 12 - 3 * z * z
    root = cmath.sqrt(disc)
    branch_point = abs(disc) <= BRANCH_POINT_TOL * max(1.0, abs(3 * z * z))
    return (-z + root) / 2, (-z - root) / 2, branch_point


def cov_derivative(z: complex, w: complex) -> Optional[complex]:
    """dw/dz along the Cov branch through (z, w); None at a branch point."""
    den = z + 2 * w
    if abs(den) <= 1e-12 * max(1.0, abs(z)):
        return None
    return -(2 * z + w) / den


def _original_forward(a: complex, z: complex) -> BranchSet:
    if z == -1:
        raise PoleInput("z = -1 is a pole of (az + 1)/(z + 1)")
    u = (a * z + 1) / (z + 1)
    v_plus, v_minus, branch_point = cov_images(u)
    images = []
    for v in (v_plus, v_minus):
        if v == a:
            raise PoleInput("branch image is infinite (v = a)")
        w = (v - 1) / (v - a)
        if branch_point:
            derivative = None
        else:
            derivative = (2 * u + v) / (u + 2 * v) * (w - 1) ** 2 / (z + 1) ** 2
        images.append(BranchImage(w, derivative))
    return BranchSet(z, tuple(images), branch_point)


def _original_backward(a: complex, w: complex) -> BranchSet:
    if w == 1:
        raise PoleInput("w = 1 is a pole of (aw - 1)/(w - 1)")
    v = (a * w - 1) / (w - 1)
    u_plus, u_minus, branch_point = cov_images(v)
    images = []
    for u in (u_plus, u_minus):
        if u == a:
            raise PoleInput("preimage is infinite (u = a)")
        z = (u - 1) / (a - u)
        if branch_point:
            derivative = None
        else:
            derivative = (u + 2 * v) / (2 * u + v) * (z + 1) ** 2 / (w - 1) ** 2
        images.append(BranchImage(z, derivative))
    return BranchSet(w, tuple(images), branch_point)


def _covj_forward(a: complex, z: complex) -> BranchSet:
    w_plus, w_minus, branch_point = cov_images(z)
    images = []
    for w_cov in (w_plus, w_minus):
        w = involution_j(a, w_cov)
        inner = None if branch_point else cov_derivative(z, w_cov)
        derivative = None if inner is None else j_derivative(a, w_cov) * inner
        images.append(BranchImage(w, derivative))
    return BranchSet(z, tuple(images), branch_point)


def _covj_backward(a: complex, w: complex) -> BranchSet:
    zeta = involution_j(a, w)
    z_plus, z_minus, branch_point = cov_images(zeta)
    images = []
    for z in (z_plus, z_minus):
        inner = None if branch_point else cov_derivative(zeta, z)
        derivative = None if inner is None else inner * j_derivative(a, w)
        images.append(BranchImage(z, derivative))
    return BranchSet(w, tuple(images), branch_point)


def mating_forward(corr: MatingCorr, z: complex) -> BranchSet:
    """The two images of z under F_a; ``branch_point`` set when they coincide."""
    z = complex(z)
    if corr.coords is Coords.ORIGINAL:
        return _original_forward(corr.a, z)
    return _covj_forward(corr.a, z)


def mating_backward(corr: MatingCorr, w: complex) -> BranchSet:
    """The two preimages of w, using the (u, v) symmetry of the relation."""
    w = complex(w)
    if corr.coords is Coords.ORIGINAL:
        return _original_backward(corr.a, w)
    return _covj_backward(corr.a, w)


def mating_relation_residual(corr: MatingCorr, z: complex, w: complex) -> float:
    """Residual of u^2 + uv + v^2 = 3 for the pair (z, w), scaled by the terms."""
    if corr.coords is Coords.ORIGINAL:
        u = (corr.a * z + 1) / (z + 1)
        v = (corr.a * w - 1) / (w - 1)
    else:
        u = z
        v = involution_j(corr.a, w)
    scale = max(1.0, abs(u) ** 2, abs(v) ** 2)
    return abs(u * u + u * v + v * v - 3) / scale


def modular_images(z: complex) -> tuple[complex, complex]:
    """Images of z under (w - (z + 1))(w(z + 1) - z) = 0: alpha(z) = z + 1, beta(z) = z/(z + 1)."""
    if z == -1:
        raise PoleInput("beta(z) = z/(z + 1) has a pole at z = -1")
    return z + 1, z / (z + 1)
