"""Multivalued orbit search: escape radii, filled-Julia membership and centers."""

from scripts.orbits.centers import critical_orbit, is_center, simple_centers, trichotomy_applies
from scripts.orbits.engine import (
    EscapeParams,
    OrbitStatus,
    OrbitVerdict,
    basin_check,
    cell_tree_search,
    certain_escape_radius,
    disk_tree_search,
    escape_radius,
    in_filled_julia,
    omega_limit_sample,
)

__all__ = [
    "EscapeParams",
    "OrbitStatus",
    "OrbitVerdict",
    "basin_check",
    "cell_tree_search",
    "certain_escape_radius",
    "critical_orbit",
    "disk_tree_search",
    "escape_radius",
    "in_filled_julia",
    "is_center",
    "omega_limit_sample",
    "simple_centers",
    "trichotomy_applies",
]
