"""Exact combinatorics: continued fractions, Minkowski's h, Sturmian words and Yoccoz disks."""

from scripts.combinatorics.continued_fraction import (
    ContinuedFraction,
    h_conjugacy_check,
    minkowski_h,
    parse_continued_fraction,
)
from scripts.combinatorics.sturmian import Word, WordMatrix, is_balanced, sturmian_word, word_matrix
from scripts.combinatorics.yoccoz_disks import DiskVariant, YoccozDisk, emit_disk_family, yoccoz_disk

__all__ = [
    "ContinuedFraction",
    "DiskVariant",
    "Word",
    "WordMatrix",
    "YoccozDisk",
    "emit_disk_family",
    "h_conjugacy_check",
    "is_balanced",
    "minkowski_h",
    "parse_continued_fraction",
    "sturmian_word",
    "word_matrix",
    "yoccoz_disk",
]
