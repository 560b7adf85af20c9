"""Raster rendering, set classification and image/CSV output."""

from scripts.render.classify import SetClassification, SetVerdict, circle_deviation_px, classify_set
from scripts.render.grid import GridSpec, Label, Raster, mark_boundary
from scripts.render.julia import (
    ParameterVariant,
    backward_orbit_points,
    render_filled_julia,
    render_julia_boundary,
    render_parameter_set,
)
from scripts.render.output import DEFAULT_PALETTE, load_palette, write_label_csv, write_ppm
from scripts.render.parallel import parallel_map

__all__ = [
    "DEFAULT_PALETTE",
    "GridSpec",
    "Label",
    "ParameterVariant",
    "Raster",
    "SetClassification",
    "SetVerdict",
    "backward_orbit_points",
    "circle_deviation_px",
    "classify_set",
    "load_palette",
    "mark_boundary",
    "parallel_map",
    "render_filled_julia",
    "render_julia_boundary",
    "render_parameter_set",
    "write_label_csv",
    "write_ppm",
]
