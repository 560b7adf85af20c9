"""Conformal IFS, dual Julia sets and branched motion near c = 0."""

from scripts.cifs.ifs import (
    AttractorSample,
    CifsData,
    build_cifs,
    dual_julia_points,
    hausdorff_upper_bound,
    hutchinson_generations,
    hutchinson_iterate,
    write_attractor_csv,
    write_dimension_csv,
)
from scripts.cifs.motion import MotionSample, branched_motion_sample, write_motion_csv

__all__ = [
    "AttractorSample",
    "CifsData",
    "MotionSample",
    "branched_motion_sample",
    "build_cifs",
    "dual_julia_points",
    "hausdorff_upper_bound",
    "hutchinson_generations",
    "hutchinson_iterate",
    "write_attractor_csv",
    "write_dimension_csv",
    "write_motion_csv",
]
