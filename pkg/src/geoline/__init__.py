"""geoline: numerical geometry of spaces of oriented geodesics.

The package models oriented geodesics of non-flat space forms as oriented
2-planes of R^(n+2), equips the resulting manifold with its neutral
para-Kahler structure (metric, reflection, symplectic form), and verifies
the analytic statements about that structure numerically: curvature
identities, geodesic flows and their ruled surfaces, Gauss maps of
hypersurfaces, and the minimal embedding into the tangent bundle of
hyperbolic space.  The `geoline` CLI drives the verification suites.
"""

from ._kernels import BACKEND as kernel_backend
from .core import GeometryError, biv_inner, complement_frame, inner, wedge
from .geodesics import (
    GeodesicTangent,
    OrientedGeodesic,
    advance,
    apply_J,
    apply_Je,
    canonical_rep,
    energy,
    frame_basis,
    isometry_push,
    make_geodesic,
    metric_G,
    metric_Ge,
    omega,
    random_geodesic,
    random_tangent,
    tangent,
)

__version__ = "0.1.0"

__all__ = [
    "GeometryError",
    "GeodesicTangent",
    "OrientedGeodesic",
    "advance",
    "apply_J",
    "apply_Je",
    "biv_inner",
    "canonical_rep",
    "complement_frame",
    "energy",
    "frame_basis",
    "inner",
    "isometry_push",
    "kernel_backend",
    "make_geodesic",
    "metric_G",
    "metric_Ge",
    "omega",
    "random_geodesic",
    "random_tangent",
    "tangent",
    "wedge",
    "__version__",
]
