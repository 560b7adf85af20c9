"""Continued fractions and Minkowski's question-mark conjugacy h.

h sends [x0; x1, x2, ...] to the binary number with x0 ones, then x1 zeros,
then x2 ones, and so on. It conjugates x -> x + 1 to t -> (t + 1)/2 and
x -> x/(x + 1) to t -> t/2. Values are exact ``Fraction`` dyadics.
"""

from __future__ import annotations

import itertools
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from scripts.core.errors import PrecisionOverflow

logger = logging.getLogger(__name__)

MAX_PRECISION_BITS = 4096

_CF_PATTERN = re.compile(r"^\[\s*(\d+)\s*(?:;\s*(.*?))?\s*\]$")
_TAIL_PATTERN = re.compile(r"\(([^()]*)\)\s*$")


@dataclass(frozen=True)
class ContinuedFraction:
    """[x0; x1, ..., xn] with an optional periodic tail repeated forever.

    Finite fractions are canonical: the last partial is at least 2.
    """

    x0: int
    partials: tuple[int, ...] = ()
    periodic_tail: Optional[tuple[int, ...]] = None

    def __post_init__(self) -> None:
        if self.x0 < 0:
            raise ValueError(f"x0 must be non-negative, got {self.x0}")
        if any(x < 1 for x in self.partials):
            raise ValueError(f"partial quotients must be positive, got {self.partials}")
        if self.periodic_tail is not None:
            if not self.periodic_tail or any(x < 1 for x in self.periodic_tail):
                raise ValueError("a periodic tail must be a nonempty list of positive integers")
        elif self.partials and self.partials[-1] < 2:
            raise ValueError("a finite continued fraction must not end in 1; use ContinuedFraction.normalised")

    @classmethod
    def normalised(
        cls,
        x0: int,
        partials: tuple[int, ...] | list[int] = (),
        periodic_tail: Optional[tuple[int, ...] | list[int]] = None,
    ) -> "ContinuedFraction":
        """Build a canonical fraction, folding a trailing 1 into the previous term."""
        terms = list(partials)
        if periodic_tail is None and terms and terms[-1] == 1:
            terms.pop()
            if terms:
                terms[-1] += 1
            else:
                x0 += 1
        tail = None if periodic_tail is None else tuple(periodic_tail)
        return cls(int(x0), tuple(terms), tail)

    @classmethod
    def from_fraction(cls, value: Fraction) -> "ContinuedFraction":
        """Canonical expansion of a non-negative rational."""
        value = Fraction(value)
        if value < 0:
            raise ValueError(f"value must be non-negative, got {value}")
        x0, rest = divmod(value.numerator, value.denominator)
        terms = []
        num, den = value.denominator, rest
        while den:
            quotient, remainder = divmod(num, den)
            terms.append(quotient)
            num, den = den, remainder
        return cls.normalised(x0, terms)

    @property
    def is_finite(self) -> bool:
        return self.periodic_tail is None

    def value(self) -> Fraction:
        """Exact value of a finite fraction."""
        if not self.is_finite:
            raise ValueError("a periodic continued fraction has no rational value")
        result = Fraction(0)
        for term in reversed(self.partials):
            result = 1 / (term + result)
        return self.x0 + result

    def terms(self) -> Iterator[int]:
        """x0, x1, ... with the periodic tail repeated forever."""
        yield self.x0
        yield from self.partials
        if self.periodic_tail is not None:
            yield from itertools.cycle(self.periodic_tail)

    def plus_one(self) -> "ContinuedFraction":
        return ContinuedFraction(self.x0 + 1, self.partials, self.periodic_tail)

    def over_successor(self) -> "ContinuedFraction":
        """x/(x + 1) as a continued fraction.

        For x >= 1 this is [0; 1, x0, x1, ...]; for x < 1 it is
        [0; x1 + 1, x2, ...].
        """
        if self.x0 >= 1:
            return ContinuedFraction.normalised(0, (1, self.x0, *self.partials), self.periodic_tail)
        if self.partials:
            head, *rest = self.partials
            return ContinuedFraction.normalised(0, (head + 1, *rest), self.periodic_tail)
        if self.periodic_tail is not None:
            head, *rest = self.periodic_tail
            return ContinuedFraction(0, (head + 1, *rest), self.periodic_tail)
        return self

    def __str__(self) -> str:
        body = ",".join(str(x) for x in self.partials)
        if self.periodic_tail is not None:
            tail = "(" + ",".join(str(x) for x in self.periodic_tail) + ")"
            body = f"{body},{tail}" if body else tail
        return f"[{self.x0};{body}]"


def parse_continued_fraction(text: str) -> ContinuedFraction:
    """Parse "[x0; x1,x2]" or "[x0; x1,(t1,t2)]" (parenthesised periodic tail).

    A trailing 1 in a finite fraction is folded into the previous term.

    Raises:
        ValueError: The text is not a continued fraction.
    """
    match = _CF_PATTERN.match(text.strip())
    if match is None:
        raise ValueError(f"not a continued fraction: {text!r}")
    x0 = int(match.group(1))
    body = (match.group(2) or "").strip()
    tail = None
    tail_match = _TAIL_PATTERN.search(body)
    if tail_match:
        tail = _int_list(tail_match.group(1), text)
        body = body[: tail_match.start()].rstrip().rstrip(",")
        if not tail:
            raise ValueError(f"empty periodic tail in {text!r}")
    partials = _int_list(body, text)
    return ContinuedFraction.normalised(x0, partials, tail)


def _int_list(body: str, text: str) -> list[int]:
    items = [item.strip() for item in body.split(",") if item.strip()]
    try:
        return [int(item) for item in items]
    except ValueError as e:
        raise ValueError(f"bad partial quotient in {text!r}") from e


def _runs(cf: ContinuedFraction) -> Iterator[int]:
    """Binary run lengths; a final run of zeros ends in a single 1 instead."""
    if not cf.is_finite:
        yield from cf.terms()
        return
    runs = [cf.x0, *cf.partials]
    if len(runs) % 2 == 0:
        runs[-1] -= 1
        runs.append(1)
    yield from runs


def minkowski_h(cf: ContinuedFraction, precision_bits: int = 64) -> Fraction:
    """h(x) truncated to ``precision_bits`` binary digits.

    Raises:
        PrecisionOverflow: ``precision_bits`` exceeds 4096.
    """
    if precision_bits < 1:
        raise ValueError(f"precision_bits must be >= 1, got {precision_bits}")
    if precision_bits > MAX_PRECISION_BITS:
        raise PrecisionOverflow(f"precision {precision_bits} exceeds {MAX_PRECISION_BITS} bits")
    value = Fraction(0)
    position = 0
    ones = True
    for run in _runs(cf):
        take = min(run, precision_bits - position)
        if ones and take:
            value += Fraction(2**take - 1, 2 ** (position + take))
        position += take
        if position >= precision_bits:
            break
        ones = not ones
    return value


@dataclass(frozen=True)
class ConjugacyReport:
    cf: ContinuedFraction
    precision_bits: int
    alpha_error: Fraction
    beta_error: Fraction

    @property
    def tolerance(self) -> Fraction:
        return Fraction(2, 2**self.precision_bits)

    @property
    def passed(self) -> bool:
        return self.alpha_error <= self.tolerance and self.beta_error <= self.tolerance

    def summary(self) -> dict:
        return {
            "cf": str(self.cf),
            "precision_bits": self.precision_bits,
            "alpha_error": float(self.alpha_error),
            "beta_error": float(self.beta_error),
            "passed": self.passed,
        }


def h_conjugacy_check(cf: ContinuedFraction, precision_bits: int = 64) -> ConjugacyReport:
    """Compare h(x + 1) with (h(x) + 1)/2 and h(x/(x + 1)) with h(x)/2."""
    h = minkowski_h(cf, precision_bits)
    alpha_error = abs(minkowski_h(cf.plus_one(), precision_bits) - (h + 1) / 2)
    beta_error = abs(minkowski_h(cf.over_successor(), precision_bits) - h / 2)
    report = ConjugacyReport(cf, precision_bits, alpha_error, beta_error)
    if not report.passed:
        logger.warning("conjugacy check failed for %s: %s", cf, report.summary())
    return report
