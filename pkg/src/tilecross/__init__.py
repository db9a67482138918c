"""Exact crossing numbers for weighted graphs, tiles and anchored graphs, with the
tile gadgets used to show crossing number has no polynomial kernel."""

from .constructions import anchored_to_tile, cross_compose
from .graph import AnchoredGraph, Edge, GraphError, Multigraph, expand_weights
from .solver import (
    CrossingSpec,
    SolveResult,
    anchored_crossing_number,
    crossing_number,
    decide_cr,
    oracle_crossing_number,
    tile_crossing_number,
)
from .tcx import parse_tcx, write_tcx
from .tiles import Tile, invert_left, invert_right, join, join_seq, make_tile, validate_diag_sep
from .topology import is_anchored_planar, is_planar, is_tile_planar

__all__ = [
    "AnchoredGraph",
    "CrossingSpec",
    "Edge",
    "GraphError",
    "Multigraph",
    "SolveResult",
    "Tile",
    "anchored_crossing_number",
    "anchored_to_tile",
    "cross_compose",
    "crossing_number",
    "decide_cr",
    "expand_weights",
    "invert_left",
    "invert_right",
    "is_anchored_planar",
    "is_planar",
    "is_tile_planar",
    "join",
    "join_seq",
    "make_tile",
    "oracle_crossing_number",
    "parse_tcx",
    "tile_crossing_number",
    "validate_diag_sep",
    "write_tcx",
]
