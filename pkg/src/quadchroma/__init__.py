"""Exact and Monte Carlo census of same-colored crossings among four points."""
from ._backend import BACKEND
from .geometry import (
    CHI_SLOPE,
    Color,
    ColorRule,
    DyadicPoint,
    LatticePoint,
    QuadClass,
    QuadKind,
    classify_quad,
    is_mono_crossing_quad,
    orient,
    parse_rule,
    segments_cross_properly,
    slope_color,
)

__version__ = "0.1.0"
