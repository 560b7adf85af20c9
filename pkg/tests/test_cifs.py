"""Tests for the conformal IFS and the branched-motion sampler."""

from __future__ import annotations

import cmath
import itertools
import math

import numpy as np
import pytest

import scripts.cifs.motion as motion
from scripts.cifs.ifs import (
    CifsData,
    branch_images,
    build_cifs,
    dual_julia_points,
    hausdorff_upper_bound,
    hutchinson_generations,
    hutchinson_iterate,
    uniform_contraction,
    write_attractor_csv,
    write_dimension_csv,
)
from scripts.cifs.motion import branched_motion_sample, write_motion_csv
from scripts.core.correspondence import PowerCorr, RationalExp
from scripts.core.errors import ContinuationCollision, NoValidRadius
from scripts.core.fixed_points import FixedPointClass, fixed_points
from scripts.core.geometry import Disk

FIVE_HALVES = RationalExp(5, 2)
THREE_HALVES = RationalExp(3, 2)


def _min_distance(points) -> float:
    return min(abs(z - w) for z, w in itertools.combinations(points, 2))


class TestBuildCifs:
    """Radius search."""

    def test_five_halves_constraints(self) -> None:
        """D1 avoids 0, sits inside D, and r matches the sup over D1."""
        cifs = build_cifs(FIVE_HALVES, 0.05)
        rho = cifs.rho
        assert rho**2.5 < 0.05
        assert 0.05 + rho**2.5 < rho
        assert cifs.image.center == 0.05
        assert cifs.image.radius == pytest.approx(rho**2.5)
        assert cifs.contraction == pytest.approx(2.5 * (0.05 + rho**2.5) ** 1.5)
        assert cifs.contraction < 0.05
        assert cifs.branch_count == 2

    def test_three_halves_radius(self) -> None:
        """beta = 3/2, c = 0.05 picks rho in (0.06, 0.3)."""
        cifs = build_cifs(THREE_HALVES, 0.05)
        assert 0.06 < cifs.rho < 0.3
        assert cifs.contraction < 1

    def test_large_c(self) -> None:
        """c = 10 is far too large."""
        with pytest.raises(NoValidRadius):
            build_cifs(FIVE_HALVES, 10)

    def test_zero_c(self) -> None:
        """c = 0 needs no IFS."""
        with pytest.raises(ValueError):
            build_cifs(FIVE_HALVES, 0)

    def test_complex_c(self) -> None:
        """A complex parameter of the same size works too."""
        cifs = build_cifs(FIVE_HALVES, 0.03 + 0.04j)
        assert abs(cifs.image.center) + cifs.image.radius < cifs.rho
        assert cifs.image.radius < 0.05


class TestHutchinson:
    """Hutchinson iteration on D1."""

    def test_one_generation(self) -> None:
        """Seed c has two distinct images, both in D1."""
        cifs = build_cifs(FIVE_HALVES, 0.05)
        sample = hutchinson_iterate(cifs, cifs.corr, 0.05, 1)
        assert len(sample) == 2
        assert sample.generation == 1
        assert all(cifs.image.contains(z) for z in sample.points)
        assert abs(sample.points[0] - sample.points[1]) > 0

    def test_zero_generations(self) -> None:
        """Zero generations returns the seed."""
        cifs = build_cifs(FIVE_HALVES, 0.05)
        sample = hutchinson_iterate(cifs, cifs.corr, 0.05 + 0.001j, 0)
        assert list(sample.points) == [0.05 + 0.001j]

    def test_no_overlaps(self) -> None:
        """Generation g has q^g distinct points."""
        cifs = build_cifs(FIVE_HALVES, 0.05)
        counts = [len(s) for s in hutchinson_generations(cifs, 0.05, 5)]
        assert counts == [2**g for g in range(6)]
        last = hutchinson_iterate(cifs, cifs.corr, 0.05, 5)
        assert _min_distance(last.points) > 0

    def test_contraction_decay(self) -> None:
        """Matching points from two seeds approach at rate r per generation."""
        cifs = build_cifs(THREE_HALVES, 0.05)
        seeds = (0.05, 0.05 + 0.5 * cifs.image.radius)
        for g in (1, 3, 5):
            first, second = (hutchinson_iterate(cifs, cifs.corr, s, g).points for s in seeds)
            gap = np.max(np.abs(first - second))
            assert gap <= abs(seeds[1] - seeds[0]) * cifs.contraction**g * (1 + 1e-9)

    def test_corr_argument(self) -> None:
        """The correspondence passed in must be the one the CIFS was built for."""
        cifs = build_cifs(FIVE_HALVES, 0.05)
        sample = hutchinson_iterate(cifs, PowerCorr(FIVE_HALVES, 0.05), 0.05, 2)
        assert len(sample) == 4
        with pytest.raises(ValueError, match="built for"):
            hutchinson_iterate(cifs, PowerCorr(FIVE_HALVES, 0.06), 0.05, 2)

    def test_seed_outside(self) -> None:
        """The seed must lie in D1."""
        cifs = build_cifs(FIVE_HALVES, 0.05)
        with pytest.raises(ValueError):
            hutchinson_iterate(cifs, cifs.corr, 0.5, 2)

    def test_uniform_derivative(self) -> None:
        """All branches share |f'(z)| and it stays below r on D1."""
        cifs = build_cifs(THREE_HALVES, 0.05)
        rng = np.random.default_rng(3)
        offsets = rng.uniform(0, 0.99, 50) * np.exp(2j * np.pi * rng.uniform(0, 1, 50))
        points = cifs.image.center + cifs.image.radius * offsets
        sup = uniform_contraction(cifs, points, branch_images(cifs, points))
        assert 0 < sup <= cifs.contraction


class TestHausdorffBound:
    """Moran-type bound s*."""

    def test_five_halves(self) -> None:
        """beta = 5/2, c = 0.05 gives s* near 0.2, well below 2."""
        s_star = hausdorff_upper_bound(build_cifs(FIVE_HALVES, 0.05))
        assert 0.18 < s_star < 0.23

    def test_monotone_in_c(self) -> None:
        """Smaller |c| gives a smaller bound."""
        bounds = [hausdorff_upper_bound(build_cifs(FIVE_HALVES, c)) for c in (0.05, 0.02, 0.01)]
        assert bounds[0] > bounds[1] > bounds[2]

    def test_synthetic_ratio(self) -> None:
        """r = 1/q gives s* = 1; r close to 1 blows up."""
        corr = PowerCorr(THREE_HALVES, 0.1)
        half = CifsData(corr, Disk(0j, 1.0), Disk(0.1 + 0j, 0.01), 0.5)
        assert hausdorff_upper_bound(half) == pytest.approx(1.0)
        near_one = CifsData(corr, Disk(0j, 1.0), Disk(0.1 + 0j, 0.01), 1 - 1e-9)
        assert hausdorff_upper_bound(near_one) > 1e6

    def test_invalid_contraction(self) -> None:
        """r must lie in (0, 1)."""
        with pytest.raises(ValueError):
            CifsData(PowerCorr(THREE_HALVES, 0.1), Disk(0j, 1.0), Disk(0.1 + 0j, 0.01), 1.0)


class TestDualJulia:
    """Dual Julia sets."""

    def test_zero(self) -> None:
        """J*_0 = {0}."""
        assert dual_julia_points(FIVE_HALVES, 0) == {0j}
        assert dual_julia_points(RationalExp(7, 3), 0) == {0j}

    def test_attracting_fixed_points(self) -> None:
        """Attracting fixed points in D1 are within tolerance of the sample."""
        tol = 1e-6
        cifs = build_cifs(FIVE_HALVES, 0.05)
        points = dual_julia_points(FIVE_HALVES, 0.05, tol)
        attracting = [
            fp.point for fp in fixed_points(PowerCorr(FIVE_HALVES, 0.05))
            if fp.kind is FixedPointClass.ATTRACTING and cifs.image.contains(fp.point)
        ]
        assert len(attracting) == 2
        for z in attracting:
            assert min(abs(z - w) for w in points) < tol

    def test_cantor_signature(self) -> None:
        """A power of q many distinct points, at least two."""
        points = dual_julia_points(FIVE_HALVES, 0.05, 1e-6)
        count = len(points)
        assert count >= 2
        assert count & (count - 1) == 0
        assert _min_distance(points) > 0


class TestBranchedMotion:
    """Periodic-point sampling of the motion of S^1."""

    def test_identity_path(self) -> None:
        """Along [0] every point stays put on the unit circle."""
        sample = branched_motion_sample(THREE_HALVES, [0], n_points=30, period_max=3)
        assert sample.at(0) == sample.base_points
        assert len(sample.base_points) == 23
        assert all(abs(abs(z) - 1) < 1e-12 for z in sample.base_points)
        assert all(track.steps == 1 for track in sample.tracks)

    def test_fixed_point_moves(self) -> None:
        """beta = 3/2: the fixed point 1 moves to about 1 - 2c."""
        sample = branched_motion_sample(THREE_HALVES, [0, 0.005, 0.01], period_max=1)
        assert sample.base_points == [pytest.approx(1 + 0j)]
        assert sample.at(2)[0] == pytest.approx(0.98, abs=1e-3)

    def test_injective_for_small_c(self) -> None:
        """Distinct seeds stay at least 1e-6 apart for |c| <= 0.01."""
        path = [0.002 * k for k in range(6)] + [0.01 * cmath.exp(0.3j * k) for k in range(1, 6)]
        sample = branched_motion_sample(THREE_HALVES, path, n_points=64, period_max=3)
        assert not sample.collisions
        for step in range(len(path)):
            assert _min_distance(sample.at(step)) >= 1e-6

    def test_analytic_in_c(self) -> None:
        """Second differences shrink by about 4 when the step halves."""
        h = 0.01

        def second_difference(step: float) -> complex:
            sample = branched_motion_sample(THREE_HALVES, [0, step, 2 * step], period_max=1)
            z0, z1, z2 = (sample.at(k)[0] for k in range(3))
            return z2 - 2 * z1 + z0

        ratio = abs(second_difference(h)) / abs(second_difference(h / 2))
        assert 3 <= ratio <= 5

    def test_bad_arguments(self) -> None:
        """Paths start at 0 and periods are capped at 12."""
        with pytest.raises(ValueError):
            branched_motion_sample(THREE_HALVES, [0.01, 0.02])
        with pytest.raises(ValueError):
            branched_motion_sample(THREE_HALVES, [0], period_max=13)

    def test_collision_recorded(self, monkeypatch) -> None:
        """A collision ends the track early instead of failing the run."""
        real = motion.continue_cycle

        def colliding(corr, seed, itinerary, path):
            if len(path) > 2:
                raise ContinuationCollision("cycle points 0 and 1 merged", 2, path[2])
            return real(corr, seed, itinerary, path)

        monkeypatch.setattr(motion, "continue_cycle", colliding)
        sample = branched_motion_sample(THREE_HALVES, [0, 0.002, 0.004, 0.006], period_max=2, workers=1)
        assert len(sample.tracks) == 3
        assert len(sample.collisions) == 3
        assert all(track.steps == 2 for track in sample.tracks)
        assert all(event.step == 2 and event.parameter == 0.004 for event in sample.collisions)
        assert sample.at(3) == []
        assert sample.summary()["complete"] == 0


class TestCsvOutput:
    """CSV emitters."""

    def test_attractor_csv(self, tmp_path) -> None:
        """Header and one row per point per generation."""
        cifs = build_cifs(FIVE_HALVES, 0.05)
        target = write_attractor_csv(hutchinson_generations(cifs, 0.05, 3), tmp_path / "a.csv")
        lines = target.read_text().splitlines()
        assert lines[0] == "gen,re,im"
        assert len(lines) == 1 + 1 + 2 + 4 + 8

    def test_dimension_csv(self, tmp_path) -> None:
        """s* column matches the bound."""
        cifs = build_cifs(FIVE_HALVES, 0.05)
        target = write_dimension_csv([cifs], tmp_path / "d.csv")
        header, row = target.read_text().splitlines()
        assert header == "beta_p,beta_q,c_re,c_im,rho,r,s_star"
        fields = row.split(",")
        assert fields[:2] == ["5", "2"]
        assert float(fields[-1]) == pytest.approx(hausdorff_upper_bound(cifs))

    def test_motion_csv(self, tmp_path) -> None:
        """One row per cycle point per path node."""
        sample = branched_motion_sample(THREE_HALVES, [0, 0.005], period_max=2)
        target = write_motion_csv(sample, tmp_path / "m.csv")
        lines = target.read_text().splitlines()
        assert lines[0] == "seed_id,step,re,im,branch_id"
        assert len(lines) == 1 + 2 * 5
        assert math.isclose(float(lines[1].split(",")[2]), 1.0)
