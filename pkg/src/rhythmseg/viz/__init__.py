"""Deterministic SVG plots for rhythmic segments."""

from .kde import DensityCurve, kde, silverman_bandwidth
from .plots import (
    PlotSpec,
    max_duration_boundary,
    min_duration_boundary,
    pattern_duration_data,
    pattern_duration_plot,
    phase_data,
    phase_plot,
    raster_data,
    raster_plot,
    ratio_curve,
    ratio_data,
    ratio_plot,
    ternary_xy,
    triangle_data,
    triangle_plot,
)

__all__ = [
    "DensityCurve",
    "kde",
    "silverman_bandwidth",
    "PlotSpec",
    "max_duration_boundary",
    "min_duration_boundary",
    "pattern_duration_data",
    "pattern_duration_plot",
    "phase_data",
    "phase_plot",
    "raster_data",
    "raster_plot",
    "ratio_curve",
    "ratio_data",
    "ratio_plot",
    "ternary_xy",
    "triangle_data",
    "triangle_plot",
]
