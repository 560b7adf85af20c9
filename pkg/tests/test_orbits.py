"""Tests for the orbit engine and critical-orbit helpers."""

from __future__ import annotations

import numpy as np
import pytest

from scripts.core.correspondence import PowerCorr, RationalExp, power_relation_residual
from scripts.orbits.centers import critical_orbit, is_center, simple_centers, trichotomy_applies
from scripts.orbits.engine import (
    EscapeParams,
    OrbitStatus,
    basin_check,
    cell_tree_search,
    certain_escape_radius,
    disk_tree_search,
    escape_radius,
    in_filled_julia,
    omega_limit_sample,
)


def _power(p: int, q: int, c: complex = 0j) -> PowerCorr:
    return PowerCorr(RationalExp(p, q), c)


def _params(corr: PowerCorr, depth: int = 50, budget: int = 1_000_000) -> EscapeParams:
    return EscapeParams(escape_radius(corr), depth, budget)


class TestEscapeRadius:
    """Escape radii."""

    def test_three_halves(self) -> None:
        """beta = 3/2, c = 0 gives R = 4 and z = 5 grows past 7.5."""
        corr = _power(3, 2)
        assert escape_radius(corr) == pytest.approx(4)
        assert 5**1.5 > 1.5 * 5

    def test_quadratic(self) -> None:
        """The classical quadratic radius is 2."""
        assert escape_radius(_power(2, 1)) == pytest.approx(2)

    def test_large_c(self) -> None:
        """beta = 5/4, c = 26 gives max(16, 52) = 52."""
        assert escape_radius(_power(5, 4, 26)) == pytest.approx(52)

    def test_certain_escape_radius(self) -> None:
        """r* solves r^beta - r - |c| = 0 and is 1 at c = 0."""
        assert certain_escape_radius(_power(3, 2)) == 1.0
        assert certain_escape_radius(_power(2, 1, -1)) == pytest.approx((1 + 5**0.5) / 2)


class TestFilledJulia:
    """Filled-Julia membership."""

    def test_fixed_point_bounded(self) -> None:
        """z = 1 stays at 1 forever."""
        corr = _power(3, 2)
        verdict = in_filled_julia(corr, 1, _params(corr))
        assert verdict.status is OrbitStatus.BOUNDED
        assert len(verdict.witness) == 50
        assert all(abs(w - 1) < 1e-12 for w in verdict.witness)

    def test_outside_escapes(self) -> None:
        """z = 5 is outside K_0."""
        corr = _power(3, 2)
        assert in_filled_julia(corr, 5, _params(corr)).status is OrbitStatus.ESCAPED

    def test_carpet_parameter_critical_orbit(self) -> None:
        """beta = 5/4, c = 26: the critical point escapes."""
        corr = _power(5, 4, 26)
        assert in_filled_julia(corr, 0, _params(corr, depth=40)).status is OrbitStatus.ESCAPED

    def test_witness_satisfies_relation(self) -> None:
        """Consecutive witness points are related by the correspondence."""
        corr = _power(5, 2, -0.2)
        verdict = in_filled_julia(corr, 0.3, _params(corr, depth=30))
        assert verdict.status is OrbitStatus.BOUNDED
        orbit = [0.3] + list(verdict.witness)
        for z, w in zip(orbit, orbit[1:]):
            assert power_relation_residual(corr, z, w) <= 1e-10

    def test_escaped_is_stable(self) -> None:
        """Escaped stays Escaped with doubled depth and radius."""
        corr = _power(3, 2, 0.3 + 0.5j)
        base = _params(corr, depth=12, budget=20_000)
        larger = EscapeParams(2 * base.radius, 24, base.node_budget)
        for z in np.linspace(-2, 2, 41) + 0.7j:
            if in_filled_julia(corr, z, base).status is OrbitStatus.ESCAPED:
                assert in_filled_julia(corr, z, larger).status is OrbitStatus.ESCAPED

    def test_budget_exhausted(self) -> None:
        """A tiny budget cannot resolve a deep query."""
        corr = _power(3, 2)
        verdict = in_filled_julia(corr, 1, _params(corr, budget=10))
        assert verdict.status is OrbitStatus.BUDGET_EXHAUSTED

    def test_deterministic(self) -> None:
        """Identical queries give identical witnesses."""
        corr = _power(5, 2, 0.05)
        params = _params(corr, depth=25)
        assert in_filled_julia(corr, 0.6 + 0.3j, params) == in_filled_julia(corr, 0.6 + 0.3j, params)

    def test_radius_below_escape_radius(self) -> None:
        """Parameters must cover the escape radius."""
        corr = _power(3, 2)
        with pytest.raises(ValueError):
            in_filled_julia(corr, 0, EscapeParams(1.0, 10, 100))

    def test_unit_disk_at_zero(self) -> None:
        """At c = 0, K_c is the closed unit disk."""
        corr = _power(5, 2)
        params = _params(corr, depth=60)
        for z in (0.97, 0.5j, -0.7 + 0.6j):
            assert in_filled_julia(corr, z, params).status is OrbitStatus.BOUNDED
        for z in (1.03, -1.1j, 0.8 + 0.8j):
            assert in_filled_julia(corr, z, params).status is OrbitStatus.ESCAPED


class TestCellTreeSearch:
    """Disk chains and pixel cells."""

    def test_cell_on_unit_circle(self) -> None:
        """A small cell around 1 meets K_0; one around 1.5 does not."""
        limit = 1.0 + 1e-12
        assert cell_tree_search(1 + 0j, 0.01, 0j, 3, 2, limit, 30, 100_000, 3) is OrbitStatus.BOUNDED
        assert cell_tree_search(1.5 + 0j, 0.01, 0j, 3, 2, limit, 30, 100_000, 3) is OrbitStatus.ESCAPED

    def test_budget(self) -> None:
        """Running out of nodes is reported, never guessed."""
        assert cell_tree_search(1 + 0j, 0.01, 0j, 3, 2, 1.0 + 1e-12, 30, 1, 3) is OrbitStatus.BUDGET_EXHAUSTED
        assert disk_tree_search(1 + 0j, 0.01, 0j, 3, 2, 1.0 + 1e-12, 30, 1)[0] is None

    def test_disk_covering_zero_collapses_to_c(self) -> None:
        """A disk around 0 maps into one disk around c."""
        survives, nodes = disk_tree_search(0j, 0.5, 26 + 0j, 5, 4, 22.2, 40, 1_000)
        assert survives is False
        assert nodes == 1

    def test_conjugate_cells_agree(self) -> None:
        """For real c, mirrored cells get the same verdict."""
        corr = _power(5, 4, 26)
        limit = _params(corr).prune_limit(corr)
        for z in (9.0 + 4.0j, -12.0 + 7.5j, 3.0 + 2.5j):
            top = cell_tree_search(z, 0.4, corr.c, 5, 4, limit, 40, 100_000, 3)
            bottom = cell_tree_search(z.conjugate(), 0.4, corr.c, 5, 4, limit, 40, 100_000, 3)
            assert top is bottom


class TestOmegaLimit:
    """Omega-limit sampling."""

    def test_superattracting_point(self) -> None:
        """Orbits from 0.5 collapse onto 0."""
        corr = _power(3, 2)
        sample = omega_limit_sample(corr, 0.5, _params(corr, depth=20), tail=4)
        assert sample
        assert all(abs(w) < 1e-6 for w in sample)

    def test_fixed_point_included(self) -> None:
        """The constant orbit at 1 contributes 1."""
        corr = _power(3, 2)
        sample = omega_limit_sample(corr, 1, _params(corr, depth=8), tail=2)
        assert min(abs(w - 1) for w in sample) < 1e-12

    def test_escape_gives_empty(self) -> None:
        """Escaping points have no omega-limit sample."""
        corr = _power(3, 2)
        assert omega_limit_sample(corr, 5, _params(corr, depth=20), tail=4) == set()

    def test_tail_must_be_shorter_than_depth(self) -> None:
        """tail < max_depth."""
        corr = _power(3, 2)
        with pytest.raises(ValueError):
            omega_limit_sample(corr, 0.5, _params(corr, depth=4), tail=4)


class TestBasinCheck:
    """Basin fractions."""

    def test_unit_disk_is_basin_of_zero(self) -> None:
        """Random points in |z| < 0.9 are attracted to 0."""
        corr = _power(3, 2)
        rng = np.random.default_rng(1)
        radii = 0.9 * np.sqrt(rng.uniform(size=100))
        samples = radii * np.exp(2j * np.pi * rng.uniform(size=100))
        assert basin_check(corr, [0], samples, _params(corr, depth=12), tail=2) == 1.0

    def test_repelling_point_not_attracted(self) -> None:
        """Samples at the repelling fixed point never count."""
        corr = _power(3, 2)
        assert basin_check(corr, [0], [1, 1, 1], _params(corr, depth=12), tail=2) == 0.0

    def test_escaping_samples_count(self) -> None:
        """Points beyond the escape radius are attracted to infinity."""
        corr = _power(3, 2)
        samples = [4.5, -5j, 6 + 6j]
        assert basin_check(corr, [0], samples, _params(corr)) == 1.0


class TestCenters:
    """Simple centers and the critical orbit."""

    def test_simple_centers(self) -> None:
        """d = 2 gives -1; d = 3 gives +-i."""
        assert simple_centers(2) == [pytest.approx(-1)]
        centers = simple_centers(3)
        assert min(abs(c - 1j) for c in centers) < 1e-12
        assert min(abs(c + 1j) for c in centers) < 1e-12

    @pytest.mark.parametrize("d", [2, 3])
    def test_critical_point_returns(self, d: int) -> None:
        """At a simple center the restricted map sends 0 back to 0 in two steps."""
        for c in simple_centers(d):
            corr = _power(2 * d, 2, c)
            params = EscapeParams.for_corr(corr, max_depth=30)
            assert is_center(corr, 2, params)
            assert critical_orbit(corr, 1, params)[1] == [pytest.approx(c)]

    def test_non_center(self) -> None:
        """c = 0.1 is not a period-2 center of z^{4/2} + c."""
        corr = _power(4, 2, 0.1)
        assert not is_center(corr, 2, EscapeParams.for_corr(corr, max_depth=30))

    def test_trichotomy(self) -> None:
        """The trichotomy needs p prime."""
        assert trichotomy_applies(RationalExp(5, 4))
        assert trichotomy_applies(RationalExp(5, 2))
        assert not trichotomy_applies(RationalExp(4, 3))
