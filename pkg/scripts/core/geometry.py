"""Small plane-geometry helpers shared by the Yoccoz, mating and CIFS code."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class Disk:
    """Closed disk in the complex plane."""

    center: complex
    radius: float

    def __post_init__(self) -> None:
        if not self.radius > 0 or not math.isfinite(self.radius):
            raise ValueError(f"disk radius must be positive and finite, got {self.radius}")

    def contains(self, z: complex, tol: float = 0.0) -> bool:
        return abs(z - self.center) <= self.radius + tol

    def margin(self, z: complex) -> float:
        """Signed distance from z to the circle, positive inside."""
        return self.radius - abs(z - self.center)

    def scaled(self, factor: float) -> "Disk":
        return Disk(self.center, self.radius * factor)


def chordal_distance(z: complex | None, w: complex | None) -> float:
    """Chordal distance on the Riemann sphere; ``None`` stands for infinity."""
    if z is None and w is None:
        return 0.0
    if z is None:
        return 2.0 / math.sqrt(1.0 + abs(w) ** 2)
    if w is None:
        return 2.0 / math.sqrt(1.0 + abs(z) ** 2)
    return 2.0 * abs(z - w) / math.sqrt((1.0 + abs(z) ** 2) * (1.0 + abs(w) ** 2))


def line_angle_deg(u: float, v: float) -> float:
    """Angle in degrees, in [0, 90], between two undirected line directions."""
    diff = abs(u - v) % math.pi
    return math.degrees(min(diff, math.pi - diff))
