"""Tests for continued fractions, Minkowski's h, Sturmian words and Yoccoz disks."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import pandas as pd
import pytest

from scripts.combinatorics.continued_fraction import (
    ContinuedFraction,
    h_conjugacy_check,
    minkowski_h,
    parse_continued_fraction,
)
from scripts.combinatorics.sturmian import (
    Word,
    eigenvalue_bound,
    is_balanced,
    sturmian_word,
    word_matrix,
)
from scripts.combinatorics.yoccoz_disks import (
    DiskVariant,
    coprime_fractions,
    disk_family,
    emit_disk_family,
    yoccoz_disk,
)
from scripts.core.errors import BadFraction, PrecisionOverflow


class TestContinuedFraction:
    """Parsing and exact transforms."""

    def test_parse_finite(self) -> None:
        """Plain lists parse to canonical fractions."""
        cf = parse_continued_fraction("[2; 3, 4]")
        assert cf == ContinuedFraction(2, (3, 4))
        assert cf.value() == 2 + Fraction(1, 1) / (3 + Fraction(1, 4))

    def test_parse_folds_trailing_one(self) -> None:
        """[1;1,1,1] is stored as [1;1,2]."""
        cf = parse_continued_fraction("[1;1,1,1]")
        assert cf.partials == (1, 2)
        assert cf.value() == Fraction(5, 3)
        assert minkowski_h(cf) == Fraction(11, 16)

    def test_parse_periodic_tail(self) -> None:
        """A parenthesised group is the periodic tail."""
        cf = parse_continued_fraction("[1; 2,(3,4)]")
        assert cf.partials == (2,)
        assert cf.periodic_tail == (3, 4)
        assert str(cf) == "[1;2,(3,4)]"

    def test_parse_rejects_garbage(self) -> None:
        """Malformed input raises ValueError."""
        with pytest.raises(ValueError):
            parse_continued_fraction("1;2,3")
        with pytest.raises(ValueError):
            parse_continued_fraction("[1; a]")

    def test_non_canonical_rejected(self) -> None:
        """A finite fraction ending in 1 is not canonical."""
        with pytest.raises(ValueError):
            ContinuedFraction(0, (2, 1))

    def test_from_fraction(self) -> None:
        """Rationals expand to their canonical fraction."""
        assert ContinuedFraction.from_fraction(Fraction(1, 2)) == ContinuedFraction(0, (2,))
        assert ContinuedFraction.from_fraction(Fraction(7)) == ContinuedFraction(7)
        assert ContinuedFraction.from_fraction(Fraction(13, 8)).value() == Fraction(13, 8)

    def test_over_successor_matches_arithmetic(self) -> None:
        """x/(x+1) agrees with exact rational arithmetic."""
        for value in (Fraction(0), Fraction(1), Fraction(3, 7), Fraction(22, 5), Fraction(1, 9)):
            cf = ContinuedFraction.from_fraction(value)
            assert cf.over_successor().value() == value / (value + 1)
            assert cf.plus_one().value() == value + 1


class TestMinkowskiH:
    """Run-length evaluation of h."""

    def test_integers(self) -> None:
        """[0;] -> 0, [1;] -> 1/2, [2;] -> 3/4."""
        assert minkowski_h(ContinuedFraction(0)) == 0
        assert minkowski_h(ContinuedFraction(1)) == Fraction(1, 2)
        assert minkowski_h(ContinuedFraction(2)) == Fraction(3, 4)

    def test_one_half(self) -> None:
        """1/2 = [0;2] maps to 1/4."""
        assert minkowski_h(ContinuedFraction(0, (2,))) == Fraction(1, 4)

    def test_golden_ratio(self) -> None:
        """[1;(1)] approximates 2/3 to the requested precision."""
        h = minkowski_h(parse_continued_fraction("[1;(1)]"), 64)
        assert abs(h - Fraction(2, 3)) <= Fraction(1, 2**64)

    def test_precision_limit(self) -> None:
        """More than 4096 bits is refused."""
        with pytest.raises(PrecisionOverflow):
            minkowski_h(ContinuedFraction(1), 4097)
        assert minkowski_h(ContinuedFraction(1), 4096) == Fraction(1, 2)

    def test_truncation(self) -> None:
        """Long runs are cut at the precision."""
        assert minkowski_h(ContinuedFraction(10), 4) == Fraction(15, 16)


class TestConjugacy:
    """h conjugates the modular generators to the binary shifts."""

    def test_examples(self) -> None:
        """x = 0 and x = 1 pass exactly."""
        for cf in (ContinuedFraction(0), ContinuedFraction(1)):
            report = h_conjugacy_check(cf, 32)
            assert report.passed
            assert report.alpha_error == 0

    def test_random_fractions(self) -> None:
        """100 random canonical fractions pass at 256 bits."""
        rng = random.Random(7)
        for _ in range(100):
            partials = [rng.randint(1, 10) for _ in range(rng.randint(0, 8))]
            cf = ContinuedFraction.normalised(rng.randint(0, 10), partials)
            report = h_conjugacy_check(cf, 256)
            assert report.passed, report.summary()
            assert max(report.alpha_error, report.beta_error) <= Fraction(1, 2**255)

    def test_periodic(self) -> None:
        """Quadratic irrationals pass too."""
        assert h_conjugacy_check(parse_continued_fraction("[0;(1,2)]"), 128).passed


class TestSturmianWord:
    """Mechanical words."""

    def test_known_words(self) -> None:
        """W_{1/3} = 001, W_{2/5} = 00101, W_{1/2} = 01."""
        assert sturmian_word(1, 3).binary() == "001"
        assert str(sturmian_word(1, 3)) == "ββα"
        assert sturmian_word(2, 5).binary() == "00101"
        assert str(sturmian_word(1, 2)) == "βα"

    def test_bad_fractions(self) -> None:
        """Unreduced or out-of-range fractions are refused."""
        for p, q in ((2, 4), (0, 3), (3, 3), (5, 3)):
            with pytest.raises(BadFraction):
                sturmian_word(p, q)

    def test_balance_and_frequency(self) -> None:
        """Every W_{p/q} with q <= 50 is balanced with exactly p letters α."""
        for q in range(2, 51):
            for p in range(1, q):
                if math.gcd(p, q) != 1:
                    continue
                word = sturmian_word(p, q)
                assert len(word) == q
                assert word.count_alpha() == p
                assert is_balanced(word)

    def test_unbalanced_word(self) -> None:
        """ααββ has factors αα and ββ."""
        assert not is_balanced(Word.from_binary("1100"))

    def test_canonical_rotation(self) -> None:
        """Canonical form is the least rotation."""
        assert Word.from_binary("01001").canonical().binary() == "00101"


class TestWordMatrix:
    """Integer matrices of words."""

    def test_one_third(self) -> None:
        """ββα -> [[1,1],[2,3]], trace 4."""
        wm = word_matrix(sturmian_word(1, 3))
        assert wm.m == ((1, 1), (2, 3))
        assert wm.trace == 4
        assert wm.eigenvalue == pytest.approx(2 + math.sqrt(3))

    def test_two_fifths(self) -> None:
        """ββαβα -> [[2,3],[5,8]], trace 10."""
        wm = word_matrix(sturmian_word(2, 5))
        assert wm.m == ((2, 3), (5, 8))
        assert wm.eigenvalue == pytest.approx(5 + 2 * math.sqrt(6))

    def test_single_letter(self) -> None:
        """α is parabolic."""
        wm = word_matrix(Word("α"))
        assert wm.m == ((1, 1), (0, 1))
        assert wm.eigenvalue is None
        assert wm.axis_endpoints() is None

    def test_axis_endpoints_are_fixed(self) -> None:
        """Axis endpoints are fixed by the Mobius action."""
        wm = word_matrix(sturmian_word(1, 3))
        low, high = wm.axis_endpoints()
        assert low == pytest.approx((-1 - math.sqrt(3)) / 2)
        assert high == pytest.approx((-1 + math.sqrt(3)) / 2)
        (a, b), (c, d) = wm.m
        for x in (low, high):
            assert (a * x + b) / (c * x + d) == pytest.approx(x)

    def test_apply_is_exact(self) -> None:
        """apply composes the generators exactly."""
        wm = word_matrix(Word("αβ"))
        x = Fraction(2, 3)
        assert wm.apply(x) == (x / (x + 1)) + 1
        assert word_matrix(Word("β")).apply(Fraction(-1)) is None

    def test_determinant_and_rotation_invariance(self) -> None:
        """det = 1 and the trace does not depend on the rotation."""
        word = sturmian_word(5, 13)
        traces = {word_matrix(rotation).trace for rotation in word.rotations()}
        assert len(traces) == 1
        assert all(word_matrix(rotation).det == 1 for rotation in word.rotations())

    def test_eigenvalue_bound_sweep(self) -> None:
        """lambda(W_{p/q}) <= (ceil(q/p) + 1)^{2p} for p/q <= 1/2, q <= 50."""
        for p, q in coprime_fractions(50):
            assert word_matrix(sturmian_word(p, q)).eigenvalue_at_most(eigenvalue_bound(p, q)), (p, q)

    def test_eigenvalue_bound_is_exact(self) -> None:
        """The integer test agrees with the float eigenvalue on small cases."""
        wm = word_matrix(sturmian_word(1, 3))
        assert wm.eigenvalue_at_most(4)
        assert not wm.eigenvalue_at_most(3)


class TestYoccozDisk:
    """Disk geometry."""

    def test_mating_one_half(self) -> None:
        """Mating (1,2): radius log(3)/2 centered at radius + i pi."""
        disk = yoccoz_disk(1, 2)
        assert disk.radius == pytest.approx(math.log(3) / 2, abs=1e-12)
        assert disk.center.imag == pytest.approx(math.pi, abs=1e-12)

    def test_classical(self) -> None:
        """Classical d = 2, m = 1: radii log(2)/2 and log(2)/3."""
        assert yoccoz_disk(1, 2, DiskVariant.CLASSICAL).radius == pytest.approx(math.log(2) / 2, abs=1e-12)
        third = yoccoz_disk(1, 3, DiskVariant.CLASSICAL)
        assert third.radius == pytest.approx(math.log(2) / 3, abs=1e-12)
        assert third.center == pytest.approx(complex(math.log(2) / 3, 2 * math.pi / 3))

    def test_tangency_and_boundary(self) -> None:
        """Disks touch the imaginary axis at 2 pi i p/q; boundary points satisfy equality."""
        for disk in disk_family(8, [(1, 16)]):
            assert disk.center.real == pytest.approx(disk.radius, abs=1e-12)
            theta = 2 * math.pi * disk.p / disk.q
            bound = 1 / (2 * disk.radius)
            for k in range(8):
                tau = disk.center + disk.radius * complex(math.cos(k), math.sin(k))
                assert tau.real == pytest.approx(bound * abs(tau - 1j * theta) ** 2, abs=1e-9)

    def test_symmetry_past_one_half(self) -> None:
        """p/q and (q-p)/q share a radius."""
        assert yoccoz_disk(2, 7).radius == pytest.approx(yoccoz_disk(5, 7).radius)

    def test_bad_fraction(self) -> None:
        """Unreduced fractions are refused."""
        with pytest.raises(BadFraction):
            yoccoz_disk(2, 4)


class TestEmitDiskFamily:
    """CSV families."""

    def test_figure_family(self, tmp_path) -> None:
        """q <= 8 plus 1/16 gives 12 rows for both variants."""
        path = tmp_path / "disks.csv"
        frame = emit_disk_family(8, [(1, 16)], DiskVariant.MATING, path)
        assert len(frame) == 12
        assert len(emit_disk_family(8, [(1, 16)], DiskVariant.CLASSICAL)) == 12
        text = path.read_bytes()
        assert b"\r" not in text
        assert text.splitlines()[0] == b"p,q,center_re,center_im,radius"
        loaded = pd.read_csv(path)
        assert list(zip(loaded["p"], loaded["q"]))[:3] == [(1, 2), (1, 3), (1, 4)]
        assert tuple(loaded.iloc[-1][["p", "q"]]) == (1, 16)

    def test_smallest_family(self) -> None:
        """q_max = 2 gives the single disk for 1/2."""
        frame = emit_disk_family(2)
        assert list(frame["p"]) == [1]
        assert list(frame["q"]) == [2]

    def test_q_max_too_small(self) -> None:
        """q_max must be at least 2."""
        with pytest.raises(ValueError):
            emit_disk_family(1)
