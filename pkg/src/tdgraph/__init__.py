"""Generalized triangle-distance Delaunay graphs.

Construction of the graph whose empty region is a scaled translate of a
fixed triangle, an optimal 1-local 0-memory routing algorithm with a runtime
potential verifier, exact spanning/routing ratio measurement, the matching
closed-form bounds, and the adversarial instances that make them tight.
"""

from .analysis import (
    AdversarialRouting,
    BoundValue,
    RatioReport,
    adversarial_routing,
    adversarial_spanning,
    baseline_ratio_expression,
    c_theta,
    ratio_expression,
    routing_ratio_measured,
    shortest_path_vertices,
    spanning_bound,
    spanning_ratio,
)
from .errors import (
    ConstructionError,
    DegenerateInputError,
    GeneralPositionError,
    GraphFormatError,
    GraphIntegrityError,
    NotValidatedError,
    PerturbationError,
    PointsParseError,
    RouteVerificationError,
    RoutingCaseError,
    ShapeError,
    TDGraphError,
)
from .geometry import (
    BARY_TOL,
    PARALLEL_TOL,
    ConeId,
    Homothet,
    TriangleShape,
    barycentric,
    canonical_triangle,
    cone_of,
    homothet_contains,
    smallest_homothet,
    wrap_index,
)
from .graph import (
    PointSet,
    TDGraph,
    ValidationReport,
    build_empty_homothet_oracle,
    build_sweep,
    perturb,
    validate_general_position,
)
from .routing import (
    NearBoundaryWarning,
    Region,
    RegionSet,
    RouteStep,
    RouteTrace,
    affine_baseline_route,
    potential,
    regions,
    route,
    route_field,
    route_step,
)
from .svg import render_svg

__version__ = "0.1.0"

__all__ = [
    "AdversarialRouting",
    "BARY_TOL",
    "BoundValue",
    "ConeId",
    "ConstructionError",
    "DegenerateInputError",
    "GeneralPositionError",
    "GraphFormatError",
    "GraphIntegrityError",
    "Homothet",
    "NearBoundaryWarning",
    "NotValidatedError",
    "PARALLEL_TOL",
    "PerturbationError",
    "PointSet",
    "PointsParseError",
    "RatioReport",
    "Region",
    "RegionSet",
    "RouteStep",
    "RouteTrace",
    "RouteVerificationError",
    "RoutingCaseError",
    "ShapeError",
    "TDGraph",
    "TDGraphError",
    "TriangleShape",
    "ValidationReport",
    "adversarial_routing",
    "adversarial_spanning",
    "affine_baseline_route",
    "barycentric",
    "baseline_ratio_expression",
    "build_empty_homothet_oracle",
    "build_sweep",
    "c_theta",
    "canonical_triangle",
    "cone_of",
    "homothet_contains",
    "perturb",
    "potential",
    "ratio_expression",
    "regions",
    "render_svg",
    "route",
    "route_field",
    "route_step",
    "routing_ratio_measured",
    "shortest_path_vertices",
    "smallest_homothet",
    "spanning_bound",
    "spanning_ratio",
    "validate_general_position",
    "wrap_index",
]
