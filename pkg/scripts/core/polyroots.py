"""Simultaneous polynomial root finding (Aberth-Ehrlich with restarts).

Coefficients are given highest degree first, as ``numpy.polyval`` expects.
Roots come back with multiplicities so that double fixed points such as the
parabolic point of a mating are reported once.
"""

from __future__ import annotations

import logging
import math

import numpy as np

from scripts.core.errors import RootFindingFailure
from scripts.utils.config import load_section

logger = logging.getLogger(__name__)

_DEFAULTS = {
    "tolerance": 1e-10,
    "max_iterations": 500,
    "restarts": 8,
    "cluster_tol": 1e-5,
    "seed": 20240601,
}

# Coefficients below this fraction of the largest one are treated as zero.
_ZERO_COEFF = 1e-14


def _trim(coeffs: np.ndarray) -> tuple[np.ndarray, int]:
    """Drop vanishing leading terms and split off exact roots at zero."""
    scale = float(np.max(np.abs(coeffs))) if coeffs.size else 0.0
    if scale == 0.0:
        raise ValueError("the zero polynomial has no finite root set")
    start = 0
    while abs(coeffs[start]) <= _ZERO_COEFF * scale:
        start += 1
    end = len(coeffs)
    zeros = 0
    while end - start > 1 and abs(coeffs[end - 1]) <= _ZERO_COEFF * scale:
        end -= 1
        zeros += 1
    return coeffs[start:end], zeros


def relative_residual(coeffs: np.ndarray, z: complex) -> float:
    """|p(z)| divided by the sum of the absolute terms at z."""
    value = np.polyval(coeffs, z)
    n = len(coeffs) - 1
    weight = sum(abs(c) * abs(z) ** (n - k) for k, c in enumerate(coeffs))
    if weight == 0.0:
        return 0.0
    return float(abs(value) / weight)


def _aberth(coeffs: np.ndarray, start: np.ndarray, max_iterations: int) -> np.ndarray:
    deriv = np.polyder(coeffs)
    z = start.copy()
    n = len(z)
    for _ in range(max_iterations):
        pz = np.polyval(coeffs, z)
        dpz = np.polyval(deriv, z)
        dpz = np.where(dpz == 0, 1e-300, dpz)
        ratio = pz / dpz
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        with np.errstate(divide="ignore", invalid="ignore"):
            sigma = np.sum(1.0 / diff, axis=1) if n > 1 else np.zeros(1, complex)
            step = ratio / (1.0 - ratio * sigma)
        step = np.where(np.isfinite(step), step, 0.0)
        z = z - step
        if np.all(np.abs(step) <= 1e-15 * np.maximum(1.0, np.abs(z))):
            break
    return z


def _cluster(z: np.ndarray, tol: float) -> list[list[complex]]:
    clusters: list[list[complex]] = []
    for root in z:
        for group in clusters:
            if abs(root - group[0]) <= tol * max(1.0, abs(group[0])):
                group.append(complex(root))
                break
        else:
            clusters.append([complex(root)])
    return clusters


def _polish(coeffs: np.ndarray, root: complex, multiplicity: int) -> complex:
    """Newton on the (m-1)-th derivative, where an m-fold root is simple."""
    target = coeffs
    for _ in range(multiplicity - 1):
        target = np.polyder(target)
    deriv = np.polyder(target)
    if len(deriv) == 0:
        return root
    for _ in range(50):
        d = np.polyval(deriv, root)
        if d == 0:
            break
        step = np.polyval(target, root) / d
        root = root - step
        if abs(step) <= 1e-16 * max(1.0, abs(root)):
            break
    return complex(root)


def polynomial_roots(coeffs, tolerance: float | None = None) -> list[tuple[complex, int]]:
    """All roots of a polynomial with their multiplicities.

    Args:
        coeffs: Complex coefficients, highest degree first.
        tolerance: Relative residual every root must reach (default from
            the ``roots`` section of config.yaml, 1e-10).

    Returns:
        ``(root, multiplicity)`` pairs sorted by real then imaginary part.

    Raises:
        RootFindingFailure: No restart reached the tolerance.
    """
    cfg = load_section("roots", _DEFAULTS)
    tol = cfg["tolerance"] if tolerance is None else tolerance
    poly, zeros = _trim(np.asarray(coeffs, dtype=complex))
    degree = len(poly) - 1
    found: list[tuple[complex, int]] = [(0j, zeros)] if zeros else []
    if degree == 0:
        return found
    if degree == 1:
        found.append((complex(-poly[1] / poly[0]), 1))
        return sorted(found, key=_order)

    rng = np.random.default_rng(cfg["seed"])
    radius = abs(poly[-1] / poly[0]) ** (1.0 / degree)
    worst = math.inf
    for attempt in range(cfg["restarts"] + 1):
        offset = rng.uniform(0.0, 2.0 * math.pi)
        scale = radius * (1.0 if attempt == 0 else rng.uniform(0.5, 2.0))
        start = scale * np.exp(1j * (2.0 * np.pi * np.arange(degree) / degree + offset))
        z = _aberth(poly, start, cfg["max_iterations"])
        roots = []
        for group in _cluster(z, cfg["cluster_tol"]):
            centre = complex(np.mean(group))
            roots.append((_polish(poly, centre, len(group)), len(group)))
        worst = max(relative_residual(poly, r) for r, _ in roots)
        if worst <= tol:
            return sorted(found + roots, key=_order)
        logger.debug("root restart %d: residual %.3g above %.1g", attempt, worst, tol)
    raise RootFindingFailure(
        f"degree-{degree} polynomial: best residual {worst:.3g} exceeds {tol:.1g}"
    )


def _order(item: tuple[complex, int]) -> tuple[float, float]:
    root = item[0]
    return (round(root.real, 12), round(root.imag, 12))
