"""Sturmian words W_{p/q} and their integer Mobius matrices.

Letters act left to right: the word g1 g2 ... gn is the matrix product
M_{g1} M_{g2} ... M_{gn} with M_alpha = [[1, 1], [0, 1]] (z -> z + 1) and
M_beta = [[1, 0], [1, 1]] (z -> z/(z + 1)). Entries are Python ints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from scripts.core.errors import BadFraction

ALPHA = "α"
BETA = "β"

_BINARY = {BETA: "0", ALPHA: "1"}

Matrix = tuple[tuple[int, int], tuple[int, int]]

M_ALPHA: Matrix = ((1, 1), (0, 1))
M_BETA: Matrix = ((1, 0), (1, 1))
_IDENTITY: Matrix = ((1, 0), (0, 1))


def check_fraction(p: int, q: int) -> None:
    """Raises BadFraction unless 0 < p < q and gcd(p, q) = 1."""
    if not (0 < p < q) or math.gcd(p, q) != 1:
        raise BadFraction(f"{p}/{q} is not a reduced fraction in (0, 1)")


@dataclass(frozen=True)
class Word:
    letters: str

    def __post_init__(self) -> None:
        if set(self.letters) - {ALPHA, BETA}:
            raise ValueError(f"letters must be {ALPHA!r} or {BETA!r}, got {self.letters!r}")

    @classmethod
    def from_binary(cls, bits: str) -> "Word":
        """"001" -> ββα."""
        return cls("".join(ALPHA if b == "1" else BETA for b in bits))

    def binary(self) -> str:
        return "".join(_BINARY[letter] for letter in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return self.letters

    def count_alpha(self) -> int:
        return self.letters.count(ALPHA)

    def rotate(self, k: int) -> "Word":
        if not self.letters:
            return self
        k %= len(self.letters)
        return Word(self.letters[k:] + self.letters[:k])

    def rotations(self) -> list["Word"]:
        return [self.rotate(k) for k in range(len(self.letters))] or [self]

    def canonical(self) -> "Word":
        """Lexicographically least rotation with β < α."""
        return min(self.rotations(), key=Word.binary)


def sturmian_word(p: int, q: int) -> Word:
    """The mechanical word s_i = floor((i+1)p/q) - floor(ip/q), 1 -> α, 0 -> β.

    Raises:
        BadFraction: p/q is not reduced or not in (0, 1).
    """
    check_fraction(p, q)
    bits = "".join(str((i + 1) * p // q - i * p // q) for i in range(q))
    return Word.from_binary(bits).canonical()


def is_balanced(word: Word) -> bool:
    """Every two cyclic factors of equal length differ by at most one α."""
    n = len(word)
    if n == 0:
        return True
    doubled = [1 if letter == ALPHA else 0 for letter in word.letters * 2]
    prefix = [0]
    for bit in doubled:
        prefix.append(prefix[-1] + bit)
    for length in range(1, n):
        counts = {prefix[i + length] - prefix[i] for i in range(n)}
        if max(counts) - min(counts) > 1:
            return False
    return True


def _multiply(left: Matrix, right: Matrix) -> Matrix:
    (a, b), (c, d) = left
    (e, f), (g, h) = right
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


@dataclass(frozen=True)
class WordMatrix:
    word: Word
    m: Matrix

    @property
    def trace(self) -> int:
        return self.m[0][0] + self.m[1][1]

    @property
    def det(self) -> int:
        (a, b), (c, d) = self.m
        return a * d - b * c

    @property
    def eigenvalue(self) -> Optional[float]:
        """Dominant eigenvalue (tr + sqrt(tr^2 - 4))/2, or None unless tr > 2."""
        tr = self.trace
        if tr <= 2:
            return None
        return (tr + math.sqrt(tr * tr - 4)) / 2

    def eigenvalue_at_most(self, bound: int) -> bool:
        """Exact test of eigenvalue <= ``bound`` for an integer bound >= 1.

        For tr > 2 the eigenvalue is at most B exactly when B * tr <= B^2 + 1.
        """
        tr = self.trace
        if tr <= 2:
            return bound >= 1
        return bound * tr <= bound * bound + 1

    def axis_endpoints(self) -> Optional[tuple[float, float]]:
        """Real fixed points of x -> (ax + b)/(cx + d), ordered; None unless hyperbolic.

        They solve c x^2 + (d - a) x - b = 0.
        """
        if self.trace <= 2:
            return None
        (a, b), (c, d) = self.m
        # tr > 2 with det 1 forces c != 0.
        disc = math.sqrt(self.trace**2 - 4)
        first = (a - d - disc) / (2 * c)
        second = (a - d + disc) / (2 * c)
        return (min(first, second), max(first, second))

    def apply(self, x: Fraction) -> Optional[Fraction]:
        """Exact Mobius image; None when the image is infinite."""
        (a, b), (c, d) = self.m
        x = Fraction(x)
        den = c * x + d
        if den == 0:
            return None
        return (a * x + b) / den


def word_matrix(word: Word) -> WordMatrix:
    product = _IDENTITY
    for letter in word.letters:
        product = _multiply(product, M_ALPHA if letter == ALPHA else M_BETA)
    return WordMatrix(word, product)


def eigenvalue_bound(p: int, q: int) -> int:
    """(ceil(q/p) + 1)^{2p}."""
    check_fraction(p, q)
    return (-(-q // p) + 1) ** (2 * p)
