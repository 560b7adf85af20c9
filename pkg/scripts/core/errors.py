"""Error types raised by the correspondence toolkit.

Everything a computation can fail with derives from ``CorrDynError`` so the
CLI can map it to exit code 1. Usage problems are click errors instead.
"""

from __future__ import annotations


class CorrDynError(Exception):
    """Base class for computational failures."""


class PoleInput(CorrDynError, ValueError):
    """The input sits on a pole of the branch formulas (e.g. z = -1)."""


class RootFindingFailure(CorrDynError):
    """Polynomial roots did not reach the residual tolerance."""


class ContinuationCollision(CorrDynError):
    """Two tracked points merged while continuing along a parameter path."""

    def __init__(self, message: str, step: int, parameter: complex) -> None:
        super().__init__(message)
        self.step = step
        self.parameter = parameter


class NewtonDivergence(CorrDynError):
    """Newton continuation failed after exhausting step halving."""


class SeedNotRepelling(CorrDynError, ValueError):
    """Backward rendering was seeded with a point that is not repelling."""


class TooManyUnknown(CorrDynError):
    """A raster has too many budget-exhausted pixels to classify."""


class OutsideDisk(CorrDynError, ValueError):
    """The mating parameter lies outside |a - 4| <= 3 or equals 1."""


class NoRepellingFixedPoint(CorrDynError):
    """No repelling fixed point is available for a Yoccoz check."""


class BadFraction(CorrDynError, ValueError):
    """p/q is not a reduced fraction with 0 < p < q."""


class PrecisionOverflow(CorrDynError, ValueError):
    """Requested binary precision exceeds the supported maximum."""


class NoValidRadius(CorrDynError):
    """No disk radius satisfies the CIFS containment constraints."""


class EscapedD1(CorrDynError):
    """A CIFS branch image left the image disk D1."""


class OutputError(CorrDynError):
    """Writing an output file failed."""
