"""Branch algebra, fixed points and continuation for the correspondence families."""

from scripts.core.continuation import continue_periodic_point, periodic_points_on_circle
from scripts.core.correspondence import (
    BranchImage,
    BranchSet,
    Coords,
    MatingCorr,
    PowerCorr,
    RationalExp,
    involution_j,
    mating_backward,
    mating_forward,
    modular_images,
    phi_a,
    power_backward,
    power_forward,
)
from scripts.core.fixed_points import Cycle, FixedPoint, FixedPointClass, fixed_points, make_cycle

__all__ = [
    "BranchImage",
    "BranchSet",
    "Coords",
    "Cycle",
    "FixedPoint",
    "FixedPointClass",
    "MatingCorr",
    "PowerCorr",
    "RationalExp",
    "continue_periodic_point",
    "fixed_points",
    "involution_j",
    "make_cycle",
    "mating_backward",
    "mating_forward",
    "modular_images",
    "periodic_points_on_circle",
    "phi_a",
    "power_backward",
    "power_forward",
]
