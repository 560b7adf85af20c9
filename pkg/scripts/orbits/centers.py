"""Critical orbits, simple centers and the prime-exponent trichotomy."""

from __future__ import annotations

import cmath
import logging
import math

from scripts.core.correspondence import PowerCorr, RationalExp, power_images
from scripts.orbits.engine import EscapeParams, OrbitStatus, in_filled_julia

logger = logging.getLogger(__name__)

CENTER_TOL = 1e-9


def simple_centers(d: int) -> list[complex]:
    """Solutions of a^{d-1} = -1, the simple centers of (w - c)^2 = z^{2d}.

    At such c the critical point 0 has the bounded orbit 0 -> c -> 0 while
    the other branch image -2c of c escapes.
    """
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    return [cmath.exp(1j * math.pi * (2 * k + 1) / (d - 1)) for k in range(d - 1)]


def critical_orbit(corr: PowerCorr, n: int, params: EscapeParams) -> list[list[complex]]:
    """Levels g_c^k(0), k = 0..n, of the map restricted to K_c.

    Images are kept only when they have a bounded forward orbit, and merged
    at ``CENTER_TOL``.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    levels = [[0j]]
    for _ in range(n):
        nxt: list[complex] = []
        for z in levels[-1]:
            for w in power_images(z, corr.c, corr.p, corr.q):
                if any(abs(w - u) <= CENTER_TOL for u in nxt):
                    continue
                if in_filled_julia(corr, w, params).status is OrbitStatus.BOUNDED:
                    nxt.append(w)
        levels.append(nxt)
        if not nxt:
            break
    return levels


def is_center(corr: PowerCorr, n: int, params: EscapeParams) -> bool:
    """True when g_c^n(0) = {0}."""
    levels = critical_orbit(corr, n, params)
    if len(levels) <= n or not levels[n]:
        return False
    return all(abs(z) <= CENTER_TOL for z in levels[n])


def trichotomy_applies(exp: RationalExp) -> bool:
    """For prime p, K_c is full, a Carpet or a Cantor repeller."""
    p = exp.p
    if p < 2:
        return False
    return all(p % k for k in range(2, math.isqrt(p) + 1))
