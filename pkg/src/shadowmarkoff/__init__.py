"""Exact shadow Markoff trees over dual numbers and positivity evidence."""
from .dualcore import (
    DualRational,
    ShadowTriple,
    Sigma,
    check_shadow_equation,
    classical_mutate,
    dual_add,
    dual_mul,
    mutate_at,
    sigma_of_root,
)
from .linearity import barycenter_check, shadow_at, transfer_matrix
from .positivity import (
    ChartPoint,
    ConvexPolygon,
    HalfPlane,
    conjectured_quadrilateral,
    find_witness,
    grid_scan,
    halfplanes_to_depth,
    is_positive_to_depth,
    polygon_intersect,
)
from .treewalk import SixTuple, branch_sequence, build_tree, path, serialize

__version__ = "0.1.0"
