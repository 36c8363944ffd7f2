"""Exact rational geometry on tori: lattices, lines, subtori, and the
reconstruction of affine maps from finite grid data."""

from .affine import AffineTorusAuto
from .collineation import (
    BudgetExceededError,
    DiscreteLine,
    GroupSummary,
    affine_group_order,
    build_incidence,
    canonical_generator,
    collineation_group,
    enumerate_discrete_lines,
    is_affine_perm,
    primitive_lift,
)
from .fileformat import TorusMapFormatError, emit_torusmap, parse_torusmap
from .geometry import (
    IntersectionCount,
    RationalLine,
    RatPoint,
    are_parallel,
    block_criterion,
    intersection_count_2d,
    intersection_points,
    is_block,
    line_grid_points,
    line_hyperplane_count,
    line_through,
    origin,
    point,
)
from .lattice import (
    LatticeBasis,
    hnf,
    is_primitive,
    is_unimodular,
    primitive_part,
    saturate,
    smith_invariants,
    snf_decomposition,
)
from .reconstruction import (
    GridMap,
    NonaffineCollineationError,
    NotCollineationError,
    PropertyReport,
    Witness,
    check_paper_properties,
    infer_affine,
    verify_line_preserving,
)
from .subtorus import (
    ComponentDecomposition,
    RationalSubtorus,
    contains_point,
    image_subtorus,
    intersect_subtori,
    line_as_subtorus,
    line_subtorus_count,
    quotient_project,
    subtorus_span,
)
from .svgfig import SceneError, render_scene

__version__ = "0.1.0"

__all__ = [
    "AffineTorusAuto",
    "BudgetExceededError",
    "ComponentDecomposition",
    "DiscreteLine",
    "GridMap",
    "GroupSummary",
    "IntersectionCount",
    "LatticeBasis",
    "NonaffineCollineationError",
    "NotCollineationError",
    "PropertyReport",
    "RatPoint",
    "RationalLine",
    "RationalSubtorus",
    "SceneError",
    "TorusMapFormatError",
    "Witness",
    "affine_group_order",
    "are_parallel",
    "block_criterion",
    "build_incidence",
    "canonical_generator",
    "check_paper_properties",
    "collineation_group",
    "contains_point",
    "emit_torusmap",
    "enumerate_discrete_lines",
    "hnf",
    "image_subtorus",
    "infer_affine",
    "intersect_subtori",
    "intersection_count_2d",
    "intersection_points",
    "is_affine_perm",
    "is_block",
    "is_primitive",
    "is_unimodular",
    "line_as_subtorus",
    "line_grid_points",
    "line_hyperplane_count",
    "line_subtorus_count",
    "line_through",
    "origin",
    "parse_torusmap",
    "point",
    "primitive_lift",
    "primitive_part",
    "quotient_project",
    "render_scene",
    "saturate",
    "smith_invariants",
    "snf_decomposition",
    "subtorus_span",
    "verify_line_preserving",
]
