"""Matings F_a: fundamental domains, limit sets and Yoccoz checks."""

from scripts.mating.domains import (
    CircleChoice,
    FundamentalDomains,
    KleinReport,
    klein_check,
    standard_domains,
    transversality,
)
from scripts.mating.limit_sets import (
    LIMIT_PALETTE,
    LimitLabel,
    LimitSetRaster,
    classify_point,
    coords_agreement,
    j_symmetric_difference,
    j_symmetry_score,
    render_limit_sets,
)
from scripts.mating.yoccoz_check import YoccozCheck, check_multiplier, write_yoccoz_csv, yoccoz_verify

__all__ = [
    "CircleChoice",
    "FundamentalDomains",
    "KleinReport",
    "LIMIT_PALETTE",
    "LimitLabel",
    "LimitSetRaster",
    "YoccozCheck",
    "check_multiplier",
    "classify_point",
    "coords_agreement",
    "j_symmetric_difference",
    "j_symmetry_score",
    "klein_check",
    "render_limit_sets",
    "standard_domains",
    "transversality",
    "write_yoccoz_csv",
    "yoccoz_verify",
]
