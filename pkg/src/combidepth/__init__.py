"""Exact combinatorial depth measures in dimensions 1 to 3."""
from __future__ import annotations

from .depth import (
    CapExceeded, DepthResult, EnclosingWitness, RPartition, peeling_depth,
    simplicial_depth, tukey_depth, tukey_depth_weighted, tverberg_depth_exact,
    tverberg_greedy_lower,
)
from .enclosing import (
    cone_extension_check, cover_halfplanes, enclosing_depth_exact,
    verify_enclosing_fast, verify_enclosing_oracle, wellseparated_check,
)
from .exact import OrientedHalfspace, PointSet, point

__version__ = "0.1.0"
