"""Area of a union of disks through a common origin, and the constants c2, c3."""

from duk.geometry import (
    DiskConfig,
    GeometryError,
    PolarParams,
    Vec2,
    from_polar,
    is_remote,
    jacobian,
    sort_by_argument,
    theta_last,
    to_polar,
)
from duk.closed_form import (
    AngleDecomposition,
    WedgeAreas,
    angles,
    union_area,
    union_area_normalized,
    wedge_areas,
)

__version__ = "0.1.0"

__all__ = [
    "AngleDecomposition",
    "DiskConfig",
    "GeometryError",
    "PolarParams",
    "Vec2",
    "WedgeAreas",
    "angles",
    "from_polar",
    "is_remote",
    "jacobian",
    "sort_by_argument",
    "theta_last",
    "to_polar",
    "union_area",
    "union_area_normalized",
    "wedge_areas",
]
