"""Tangent circle and sphere configurations and the triangle centers they define."""

from .core import (
    DEFAULT_RTOL,
    CenterImage,
    CoincidentPoints,
    CoincidentTangencies,
    DegenerateBendSum,
    DegenerateTriangle,
    GeneralizedCircle,
    GeometryError,
    InversionMap,
    Line,
    NotCollinear,
    NotExternal,
    NotMutuallyTangent,
    NotTangent,
    ParallelLines,
    Unrealizable,
    circle_through_three_points,
    concurrency_point,
    cross_ratio,
    intersect_lines,
    invert,
)
from .tangency import (
    Orientation,
    Sphere,
    TangentQuadruple,
    generate_containing_quadruple,
    generate_tangent_spheres,
    opposite_tangency_lines,
    signed_bend,
    tangency_point,
    verify_coincidence,
    weighted_center,
)
from .triangle import Triangle, contact_points, gergonne_point, incenter, vertex_circles
from .soddy import (
    OuterClass,
    SoddyPair,
    construct_inner_soddy_by_inversion,
    soddy_circles,
    soddy_tangencies,
)
from .centers import (
    CenterReport,
    altitude_coincidence_witness,
    center_M,
    center_M_prime,
    soddy_centers,
    soddy_line_report,
    trilinear_coords,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_RTOL",
    "CenterImage",
    "CenterReport",
    "CoincidentPoints",
    "CoincidentTangencies",
    "DegenerateBendSum",
    "DegenerateTriangle",
    "GeneralizedCircle",
    "GeometryError",
    "InversionMap",
    "Line",
    "NotCollinear",
    "NotExternal",
    "NotMutuallyTangent",
    "NotTangent",
    "Orientation",
    "OuterClass",
    "ParallelLines",
    "SoddyPair",
    "Sphere",
    "TangentQuadruple",
    "Triangle",
    "Unrealizable",
    "altitude_coincidence_witness",
    "center_M",
    "center_M_prime",
    "circle_through_three_points",
    "concurrency_point",
    "construct_inner_soddy_by_inversion",
    "contact_points",
    "cross_ratio",
    "generate_containing_quadruple",
    "generate_tangent_spheres",
    "gergonne_point",
    "incenter",
    "intersect_lines",
    "invert",
    "opposite_tangency_lines",
    "signed_bend",
    "soddy_centers",
    "soddy_circles",
    "soddy_line_report",
    "soddy_tangencies",
    "tangency_point",
    "trilinear_coords",
    "verify_coincidence",
    "vertex_circles",
    "weighted_center",
]
