"""Newton continuation of periodic points of z^{p/q} + c along a parameter path."""

from __future__ import annotations

import cmath
import logging
import math
from typing import Iterator, Sequence

import numpy as np

from scripts.core.correspondence import PowerCorr, RationalExp, power_forward
from scripts.core.errors import ContinuationCollision, NewtonDivergence

logger = logging.getLogger(__name__)

RESIDUAL_TOL = 1e-10
COLLISION_TOL = 1e-8
MAX_HALVINGS = 20
NEWTON_STEPS = 30


def cycle_from_itinerary(corr: PowerCorr, seed: complex, itinerary: Sequence[int]) -> np.ndarray:
    """Follow ``itinerary`` from ``seed``; the result must close up on the seed.

    Raises:
        ValueError: The itinerary is empty, indexes a missing branch, or the
            orbit does not return to the seed.
    """
    if not itinerary:
        raise ValueError("itinerary must name at least one branch")
    points = [complex(seed)]
    for step, branch in enumerate(itinerary):
        images = power_forward(corr, points[-1])
        if not 0 <= branch < len(images):
            raise ValueError(f"step {step}: branch {branch} out of range (0..{len(images) - 1})")
        points.append(images.images[branch].value)
    if abs(points[-1] - points[0]) > 1e-8 * max(1.0, abs(points[0])):
        raise ValueError("seed is not periodic for the given itinerary")
    return np.array(points[:-1], dtype=complex)


def _residual(points: np.ndarray, c: complex, p: int, q: int) -> np.ndarray:
    following = np.roll(points, -1)
    return (following - c) ** q - points ** p


def _relative_residual(points: np.ndarray, c: complex, p: int, q: int) -> float:
    scale = np.maximum(1.0, np.abs(points) ** p)
    return float(np.max(np.abs(_residual(points, c, p, q)) / scale))


def _jacobian(points: np.ndarray, c: complex, p: int, q: int) -> np.ndarray:
    n = len(points)
    following = np.roll(points, -1)
    jac = np.zeros((n, n), dtype=complex)
    for i in range(n):
        jac[i, i] -= p * points[i] ** (p - 1)
        jac[i, (i + 1) % n] += q * (following[i] - c) ** (q - 1)
    return jac


def _newton(points: np.ndarray, c: complex, p: int, q: int) -> np.ndarray | None:
    z = points.copy()
    for _ in range(NEWTON_STEPS):
        try:
            delta = np.linalg.solve(_jacobian(z, c, p, q), _residual(z, c, p, q))
        except np.linalg.LinAlgError:
            return None
        z = z - delta
        if not np.all(np.isfinite(z)):
            return None
        if np.max(np.abs(delta)) <= 1e-15 * max(1.0, float(np.max(np.abs(z)))):
            break
    if _relative_residual(z, c, p, q) > RESIDUAL_TOL:
        return None
    return z


def _tangent(points: np.ndarray, c: complex, p: int, q: int) -> np.ndarray | None:
    """dZ/dc from the implicit function theorem."""
    following = np.roll(points, -1)
    dc = -q * (following - c) ** (q - 1)
    try:
        return -np.linalg.solve(_jacobian(points, c, p, q), dc)
    except np.linalg.LinAlgError:
        return None


def _step(points: np.ndarray, c_from: complex, c_to: complex, p: int, q: int) -> np.ndarray | None:
    slope = _tangent(points, c_from, p, q)
    guess = points if slope is None else points + slope * (c_to - c_from)
    return _newton(guess, c_to, p, q)


def _check_separation(points: np.ndarray, step: int, c: complex) -> None:
    if np.min(np.abs(points)) < COLLISION_TOL:
        raise ContinuationCollision("cycle point reached the critical point 0", step, c)
    n = len(points)
    for i in range(n):
        for j in range(i + 1, n):
            if abs(points[i] - points[j]) < COLLISION_TOL:
                raise ContinuationCollision(f"cycle points {i} and {j} merged", step, c)


def continue_cycle(
    corr: PowerCorr,
    seed: complex,
    itinerary: Sequence[int],
    path: Sequence[complex],
) -> list[np.ndarray]:
    """Continue the whole cycle through ``seed`` along ``path``.

    Args:
        corr: Supplies the exponent; its ``c`` is replaced by ``path[0]``.
        seed: Periodic point at ``path[0]``.
        itinerary: Branch index taken at each step of the cycle.
        path: Parameter values; consecutive nodes are bridged with step
            halving when Newton fails.

    Returns:
        One array of cycle points per path node.

    Raises:
        ContinuationCollision: Two cycle points merged, or one hit 0.
        NewtonDivergence: Step halving was exhausted.
    """
    if not path:
        raise ValueError("path must contain at least one parameter")
    p, q = corr.p, corr.q
    start = corr.with_c(path[0])
    initial = cycle_from_itinerary(start, seed, itinerary)
    _check_separation(initial, 0, start.c)
    points = _newton(initial, start.c, p, q)
    if points is None:
        raise NewtonDivergence("seed cycle does not satisfy the periodic-point equations")
    tracked = [points]
    for step in range(1, len(path)):
        c_from, c_to = complex(path[step - 1]), complex(path[step])
        current, h, halvings = c_from, c_to - c_from, 0
        while current != c_to:
            target = c_to if abs(c_to - current) <= abs(h) else current + h
            moved = _step(points, current, target, p, q)
            if moved is None:
                halvings += 1
                if halvings > MAX_HALVINGS:
                    raise NewtonDivergence(
                        f"no convergence between c={c_from} and c={c_to} after {MAX_HALVINGS} halvings"
                    )
                h /= 2
                continue
            points, current = moved, target
        _check_separation(points, step, c_to)
        tracked.append(points.copy())
    return tracked


def continue_periodic_point(
    corr: PowerCorr,
    seed: complex,
    itinerary: Sequence[int],
    path: Sequence[complex],
) -> list[complex]:
    """The continued seed at every node of ``path`` (see ``continue_cycle``)."""
    return [complex(points[0]) for points in continue_cycle(corr, seed, itinerary, path)]


def periodic_points_on_circle(
    exp: RationalExp, period: int, limit: int | None = None
) -> Iterator[tuple[complex, list[int]]]:
    """Cycles of minimal period ``period`` on the unit circle at c = 0.

    At c = 0 a point e^{2 pi i x/N} with N = p^n - q^n maps to
    e^{2 pi i x'/N} with x' = p q^{-1} x (mod N). Yields one
    ``(seed, itinerary)`` per cycle, seed taken at the smallest x.
    """
    if period < 1:
        raise ValueError("period must be >= 1")
    if math.gcd(exp.p, exp.q) != 1:
        raise ValueError(f"periodic seeding needs a reduced exponent, got {exp}")
    modulus = exp.p**period - exp.q**period
    factor = exp.p * pow(exp.q, -1, modulus) % modulus if modulus > 1 else 0
    base = PowerCorr(exp, 0j)
    seen: set[int] = set()
    emitted = 0
    for x in range(modulus):
        if x in seen:
            continue
        orbit = [x]
        nxt = factor * x % modulus
        while nxt != x:
            orbit.append(nxt)
            nxt = factor * nxt % modulus
        seen.update(orbit)
        if len(orbit) != period:
            continue
        points = [cmath.exp(2j * math.pi * k / modulus) for k in orbit]
        itinerary = []
        for i, z in enumerate(points):
            index, _ = power_forward(base, z).nearest(points[(i + 1) % period])
            itinerary.append(index)
        yield points[0], itinerary
        emitted += 1
        if limit is not None and emitted >= limit:
            return
