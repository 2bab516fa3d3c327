"""The manifold of oriented geodesics of a non-flat space form.

An oriented geodesic of the quadric {<x,x>_c = 1} is encoded by an ordered
pair (x, y) with

    <x, x>_c = 1,    <y, y>_c = c,    <x, y>_c = 0,

i.e. a point together with a unit velocity; the pair spans an oriented
2-plane whose packed bivector x ^ y is a complete invariant of the
geodesic.  Tangent vectors at x ^ y are pairs (X, Y) of ambient vectors
orthogonal to the plane, encoding the bivector x ^ X + y ^ Y.

Two metrics live here: the restriction ``metric_Ge`` of the flat bivector
metric, and the neutral metric ``metric_G`` with component formula
<X1,Y2>_c + <X2,Y1>_c.  Together with the reflection ``apply_J`` and the
swap ``apply_Je`` they generate the structure verified by the test suites.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .core import (
    GeometryError,
    check_curvature_sign,
    complement_frame,
    form_signs,
    inner,
    is_form_isometry,
    wedge,
)

__all__ = [
    "OrientedGeodesic",
    "GeodesicTangent",
    "make_geodesic",
    "canonical_rep",
    "advance",
    "tangent",
    "transport_tangent",
    "metric_Ge",
    "metric_G",
    "apply_Je",
    "apply_J",
    "omega",
    "energy",
    "frame_basis",
    "isometry_push",
    "push_tangent",
    "orbit_generator",
    "orbit_geodesic",
    "key_residual",
    "random_geodesic",
    "random_tangent",
    "null_tangent",
]

CONSTRAINT_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class OrientedGeodesic:
    """An oriented geodesic as a normalized pair (x, y) plus its plane key."""

    x: np.ndarray
    y: np.ndarray
    c: int
    key: np.ndarray

    @property
    def dim(self) -> int:
        return self.x.shape[0]

    @property
    def n(self) -> int:
        return self.dim - 2

    @functools.cached_property
    def frame(self) -> np.ndarray:
        """Complement frame of the plane, rows e_1..e_n (shape (n, dim))."""
        return np.array(complement_frame(self.x, self.y, self.c))

    def constraint_residual(self) -> float:
        return max(
            abs(float(inner(self.x, self.x, self.c)) - 1.0),
            abs(float(inner(self.y, self.y, self.c)) - self.c),
            abs(float(inner(self.x, self.y, self.c))),
        )


@dataclass(frozen=True, eq=False)
class GeodesicTangent:
    """Tangent x ^ X + y ^ Y at ``base``; X, Y are orthogonal to the plane."""

    base: OrientedGeodesic
    X: np.ndarray
    Y: np.ndarray

    def bivector(self) -> np.ndarray:
        return wedge(self.base.x, self.X) + wedge(self.base.y, self.Y)

    def __add__(self, other: "GeodesicTangent") -> "GeodesicTangent":
        _check_same_base(self, other)
        return GeodesicTangent(self.base, self.X + other.X, self.Y + other.Y)

    def __sub__(self, other: "GeodesicTangent") -> "GeodesicTangent":
        _check_same_base(self, other)
        return GeodesicTangent(self.base, self.X - other.X, self.Y - other.Y)

    def __mul__(self, scalar: float) -> "GeodesicTangent":
        return GeodesicTangent(self.base, self.X * scalar, self.Y * scalar)

    __rmul__ = __mul__


def make_geodesic(x, y, c, tol: float = CONSTRAINT_TOL) -> OrientedGeodesic:
    """Validate and renormalize (x, y) into an oriented geodesic.

    The three constraint equations must hold within ``tol`` on input; the
    stored representative is renormalized to machine precision (rescale x,
    orthogonalize then rescale y).  For c = -1 the point must lie on the
    upper sheet, x_0 > 0.
    """
    c = check_curvature_sign(c)
    x = np.asarray(x, dtype=float).copy()
    y = np.asarray(y, dtype=float).copy()
    if x.ndim != 1 or y.shape != x.shape:
        raise GeometryError("expected two ambient vectors of equal dimension")
    if x.shape[0] < 3:
        raise GeometryError("ambient dimension must be at least 3 (n >= 1)")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise GeometryError("non-finite entries in geodesic data")

    qx = float(inner(x, x, c))
    qy = float(inner(y, y, c))
    qxy = float(inner(x, y, c))
    if abs(qx - 1.0) > tol or abs(qy - c) > tol or abs(qxy) > tol:
        raise GeometryError(
            "constraint violation: "
            f"<x,x>={qx:.3e}, <y,y>={qy:.3e}, <x,y>={qxy:.3e}"
        )
    if c == -1 and x[0] <= 0.0:
        raise GeometryError("hyperbolic points must satisfy x_0 > 0 (wrong sheet)")

    x = x / math.sqrt(qx)
    y = y - float(inner(y, x, c)) * x
    qy = float(inner(y, y, c))
    if qy * c <= 0:
        raise GeometryError("direction vector degenerates under renormalization")
    y = y * math.sqrt(c / qy)
    return OrientedGeodesic(x=x, y=y, c=c, key=wedge(x, y))


def _cos_c(t: float, c: int) -> float:
    return math.cos(t) if c == 1 else math.cosh(t)


def _sin_c(t: float, c: int) -> float:
    return math.sin(t) if c == 1 else math.sinh(t)


def advance(geo: OrientedGeodesic, t: float) -> OrientedGeodesic:
    """Flow the representative along its own geodesic by parameter t.

    (x, y) -> (x cos_c t + y sin_c t, -c x sin_c t + y cos_c t); the plane
    key is unchanged, so this is a pure change of representative.
    """
    ct, st = _cos_c(t, geo.c), _sin_c(t, geo.c)
    x = geo.x * ct + geo.y * st
    y = -geo.c * geo.x * st + geo.y * ct
    return make_geodesic(x, y, geo.c)


def canonical_rep(geo: OrientedGeodesic) -> OrientedGeodesic:
    """Representative with Euclidean-orthogonal pair, hyperbolic case only.

    Among all pairs (x, y) spanning the oriented plane there is exactly one
    with <x, y>_{+1} = 0 and x_0 > 0: the point of the geodesic closest to
    the hyperboloid's center together with its velocity.  Idempotent.
    """
    if geo.c != -1:
        raise GeometryError(
            "canonical representatives exist only for c = -1; "
            "compare bivector keys instead"
        )
    e0 = float(np.dot(geo.x, geo.y))
    denom = float(np.dot(geo.x, geo.x) + np.dot(geo.y, geo.y))
    # |2 e0 / denom| < 1 strictly for any nondegenerate plane (Cauchy-Schwarz)
    t = 0.5 * math.atanh(-2.0 * e0 / denom)
    return advance(geo, t)


def _check_same_base(t1: GeodesicTangent, t2: GeodesicTangent) -> None:
    b1, b2 = t1.base, t2.base
    if b1 is b2:
        return
    if b1.c != b2.c or b1.dim != b2.dim:
        raise GeometryError("tangent base mismatch")
    if (
        float(np.max(np.abs(b1.x - b2.x))) > 1e-9
        or float(np.max(np.abs(b1.y - b2.y))) > 1e-9
    ):
        raise GeometryError("tangents live at different representatives")


def tangent(geo: OrientedGeodesic, X, Y) -> GeodesicTangent:
    """Build a tangent, silently projecting X, Y onto the plane complement."""
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    c = geo.c

    def _perp(v: np.ndarray) -> np.ndarray:
        v = v - float(inner(v, geo.x, c)) * geo.x
        return v - float(inner(v, geo.y, c)) * c * geo.y

    return GeodesicTangent(geo, _perp(X), _perp(Y))


def transport_tangent(t: GeodesicTangent, target: OrientedGeodesic) -> GeodesicTangent:
    """Express the same tangent bivector at another representative.

    ``target`` must span the same oriented plane.  Uses the metric
    contraction of the tangent bivector with the new pair: for
    B = x ^ X + y ^ Y one has X' = -(B ⌟ x'), Y' = -c (B ⌟ y') up to
    in-plane components removed by projection.
    """
    if key_residual(t.base, target) > 1e-6:
        raise GeometryError("transport requires representatives of the same plane")
    c = target.c
    x, y, X, Y = t.base.x, t.base.y, t.X, t.Y

    def contract_with(v: np.ndarray) -> np.ndarray:
        return (
            x * float(inner(X, v, c))
            - X * float(inner(x, v, c))
            + y * float(inner(Y, v, c))
            - Y * float(inner(y, v, c))
        )

    new_x = -contract_with(target.x)
    new_y = -c * contract_with(target.y)
    return tangent(target, new_x, new_y)


def metric_Ge(t1: GeodesicTangent, t2: GeodesicTangent):
    """Restriction of the flat bivector metric, via the packed bivectors."""
    _check_same_base(t1, t2)
    from .core import biv_inner

    return float(biv_inner(t1.bivector(), t2.bivector(), t1.base.c))


def metric_G(t1: GeodesicTangent, t2: GeodesicTangent) -> float:
    """Neutral metric <X1,Y2>_c + <X2,Y1>_c."""
    _check_same_base(t1, t2)
    c = t1.base.c
    return float(inner(t1.X, t2.Y, c) + inner(t2.X, t1.Y, c))


def apply_Je(t: GeodesicTangent) -> GeodesicTangent:
    """(X, Y) -> (Y, cX); squares to c * identity."""
    return GeodesicTangent(t.base, t.Y.copy(), t.base.c * t.X)


def apply_J(t: GeodesicTangent) -> GeodesicTangent:
    """(X, Y) -> (X, -Y); squares to the identity."""
    return GeodesicTangent(t.base, t.X.copy(), -t.Y)


def omega(t1: GeodesicTangent, t2: GeodesicTangent) -> float:
    """Symplectic pairing <X1,Y2>_c - <X2,Y1>_c = metric_G(apply_J(t1), t2)."""
    _check_same_base(t1, t2)
    c = t1.base.c
    return float(inner(t1.X, t2.Y, c) - inner(t2.X, t1.Y, c))


def energy(t: GeodesicTangent) -> float:
    """Squared speed metric_G(t, t) = 2 <X, Y>_c (may vanish or be negative)."""
    return metric_G(t, t)


def frame_basis(geo: OrientedGeodesic) -> list[GeodesicTangent]:
    """The 2n tangents E_i = x ^ e_i, E_{n+i} = y ^ e_i from the frame."""
    zeros = np.zeros(geo.dim)
    first = [GeodesicTangent(geo, e.copy(), zeros.copy()) for e in geo.frame]
    second = [GeodesicTangent(geo, zeros.copy(), e.copy()) for e in geo.frame]
    return first + second


def isometry_push(m, geo: OrientedGeodesic, tol: float = 1e-10) -> OrientedGeodesic:
    """Push the geodesic forward by a linear isometry of the ambient form."""
    m = np.asarray(m, dtype=float)
    if not is_form_isometry(m, geo.c, tol):
        raise GeometryError("matrix does not preserve the ambient form")
    new_x = m @ geo.x
    if geo.c == -1 and new_x[0] <= 0:
        raise GeometryError("isometry does not preserve the upper sheet")
    return make_geodesic(new_x, m @ geo.y, geo.c)


def push_tangent(m, t: GeodesicTangent, tol: float = 1e-10) -> GeodesicTangent:
    """Differential of ``isometry_push``: (X, Y) -> (MX, MY)."""
    m = np.asarray(m, dtype=float)
    target = isometry_push(m, t.base, tol)
    return tangent(target, m @ t.X, m @ t.Y)


def orbit_generator(t: GeodesicTangent) -> np.ndarray:
    """Skew-adjoint ambient generator A with A x = -Y, A y = X.

    exp(tA) is a one-parameter isometry group whose orbit through the base
    plane is the geodesic of the neutral metric with initial tangent ``t``
    (closed form used as an oracle for the chart integrator).
    """
    geo = t.base
    s = form_signs(geo.dim, geo.c)
    c = geo.c
    a = (
        -np.outer(t.Y, s * geo.x)
        + c * np.outer(t.X, s * geo.y)
        + np.outer(geo.x, s * t.Y)
        - c * np.outer(geo.y, s * t.X)
    )
    return a


def orbit_geodesic(
    t: GeodesicTangent, time: float
) -> tuple[OrientedGeodesic, GeodesicTangent]:
    """Closed-form geodesic point and tangent at parameter ``time``."""
    m = scipy.linalg.expm(time * orbit_generator(t))
    geo = isometry_push(m, t.base, tol=1e-8)
    return geo, tangent(geo, m @ t.X, m @ t.Y)


def key_residual(g1: OrientedGeodesic, g2: OrientedGeodesic) -> float:
    """Max componentwise difference of the plane keys."""
    return float(np.max(np.abs(g1.key - g2.key)))


def random_geodesic(n: int, c, rng: np.random.Generator) -> OrientedGeodesic:
    """Seeded random geodesic of the n+1 dimensional space form."""
    c = check_curvature_sign(c)
    dim = n + 2
    if c == 1:
        x = rng.normal(size=dim)
        x = x / math.sqrt(float(inner(x, x, c)))
    else:
        xi = 0.7 * rng.normal(size=dim - 1)
        x = np.concatenate(([math.sqrt(1.0 + float(xi @ xi))], xi))
    v = rng.normal(size=dim)
    w = v - float(inner(v, x, c)) * x
    qw = float(inner(w, w, c))
    if abs(qw) < 1e-12:  # pragma: no cover - measure zero
        return random_geodesic(n, c, rng)
    y = w * math.sqrt(c / qw)
    return make_geodesic(x, y, c)


def random_tangent(
    geo: OrientedGeodesic, rng: np.random.Generator, scale: float = 1.0
) -> GeodesicTangent:
    """Seeded random tangent at ``geo``."""
    X = scale * rng.normal(size=geo.dim)
    Y = scale * rng.normal(size=geo.dim)
    return tangent(geo, X, Y)


def null_tangent(
    geo: OrientedGeodesic, rng: np.random.Generator, scale: float = 1.0
) -> GeodesicTangent:
    """Random tangent with metric_G(t, t) = 0, i.e. <X, Y>_c = 0."""
    t = random_tangent(geo, rng, scale)
    qx = float(inner(t.X, t.X, geo.c))
    if abs(qx) < 1e-12:  # pragma: no cover - measure zero
        return null_tangent(geo, rng, scale)
    y = t.Y - float(inner(t.X, t.Y, geo.c)) / qx * t.X
    return GeodesicTangent(geo, t.X, y)
