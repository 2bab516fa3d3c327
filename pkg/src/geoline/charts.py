"""Local charts of the geodesic space and chart-based tensor calculus.

A chart around a base geodesic (x0, y0) with complement frame e_1..e_n
sends u = (a, b) in R^{2n} to the geodesic

    ( normalize_c(x0 + sum a_i e_i),  orthonormalize(y0 + sum b_i e_i) ).

The pulled-back Gram matrices of both metrics are produced by the kernel
backend; Christoffel symbols and the curvature tensor are assembled from
central differences of those samples on a cached lattice.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .core import GeometryError, inner
from .geodesics import (
    GeodesicTangent,
    OrientedGeodesic,
    frame_basis,
    make_geodesic,
    tangent,
)

__all__ = [
    "Chart",
    "chart_at",
    "MetricStencil",
    "christoffel",
    "riemann",
    "numeric_differential",
]

DEFAULT_RADIUS = 0.1
DEFAULT_STEP = 1e-3


@dataclass(frozen=True, eq=False)
class Chart:
    """Immutable local parametrization of the geodesic space."""

    base: OrientedGeodesic
    frame: np.ndarray  # (n, dim) complement frame rows
    radius: float = DEFAULT_RADIUS

    @property
    def c(self) -> int:
        return self.base.c

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def dim(self) -> int:
        return self.base.dim

    def _check_domain(self, U: np.ndarray) -> None:
        if U.size and float(np.max(np.abs(U))) > self.radius * (1 + 1e-9):
            raise GeometryError("chart point outside the validity radius")

    def map_many(self, U) -> tuple[np.ndarray, np.ndarray]:
        U = np.atleast_2d(np.asarray(U, dtype=float))
        return _kernels.chart_map(self.base.x, self.base.y, self.frame, self.c, U)

    def map(self, u) -> OrientedGeodesic:
        xs, ys = self.map_many(np.atleast_2d(u))
        return make_geodesic(xs[0], ys[0], self.c)

    def jacobian_many(self, U):
        U = np.atleast_2d(np.asarray(U, dtype=float))
        return _kernels.chart_jacobian(
            self.base.x, self.base.y, self.frame, self.c, U
        )

    def grams_many(self, U):
        U = np.atleast_2d(np.asarray(U, dtype=float))
        return _kernels.chart_grams(self.base.x, self.base.y, self.frame, self.c, U)

    def tangent_from_coords(self, u, w) -> GeodesicTangent:
        """Tangent at map(u) with chart-coordinate components w."""
        x, y, X, Y = self.jacobian_many(np.atleast_2d(u))
        w = np.asarray(w, dtype=float)
        geo = make_geodesic(x[0], y[0], self.c)
        return tangent(geo, w @ X[0], w @ Y[0])

    def coords_of_tangent(self, u, t: GeodesicTangent) -> np.ndarray:
        """Chart components of a tangent given at the rep map(u)."""
        x, y, X, Y = self.jacobian_many(np.atleast_2d(u))
        stack = np.concatenate([X[0], Y[0]], axis=1)  # (2n, 2*dim)
        rhs = np.concatenate([t.X, t.Y])
        w, *_ = np.linalg.lstsq(stack.T, rhs, rcond=None)
        return w

    def coords(self, geo: OrientedGeodesic) -> np.ndarray:
        """Inverse chart: coordinates u with map(u) spanning ``geo``'s plane.

        Solves x0 + E a in span(x', y') and y0 + E b in span(x', y'); the
        chart then reproduces the oriented plane exactly.
        """
        if geo.c != self.c or geo.dim != self.dim:
            raise GeometryError("geodesic incompatible with chart")
        cols = np.column_stack([geo.x, geo.y, -self.frame.T])
        try:
            sol_a = np.linalg.solve(cols, self.base.x)
            sol_b = np.linalg.solve(cols, self.base.y)
        except np.linalg.LinAlgError as exc:
            raise GeometryError("geodesic outside the chart") from exc
        if sol_a[0] <= 0:
            raise GeometryError("geodesic outside the chart (orientation flip)")
        return np.concatenate([sol_a[2:], sol_b[2:]])


def chart_at(geo: OrientedGeodesic, radius: float = DEFAULT_RADIUS) -> Chart:
    """Chart centered at ``geo`` built on its complement frame."""
    return Chart(base=geo, frame=geo.frame.copy(), radius=radius)


def numeric_differential(chart: Chart, u=None, h: float = 1e-6) -> np.ndarray:
    """Finite-difference differential of the chart map as packed bivectors.

    Column k is the central difference of the plane key along coordinate
    k; used as an oracle for the analytic Jacobian and for rank tests.
    """
    n2 = 2 * chart.n
    u = np.zeros(n2) if u is None else np.asarray(u, dtype=float)
    shifts = np.vstack([np.eye(n2), -np.eye(n2)]) * h + u
    xs, ys = chart.map_many(shifts)
    from .core import wedge

    keys = wedge(xs, ys)
    return ((keys[:n2] - keys[n2:]) / (2 * h)).T


class MetricStencil:
    """Cached Gram samples of both metrics on the lattice u0 + h * offsets."""

    def __init__(self, chart: Chart, u0, h: float = DEFAULT_STEP):
        self.chart = chart
        self.u0 = np.asarray(u0, dtype=float)
        self.h = float(h)
        self._cache: dict[tuple[int, ...], tuple[np.ndarray, np.ndarray]] = {}

    def prefetch(self, offsets) -> None:
        offsets = [tuple(int(v) for v in off) for off in offsets]
        missing = [off for off in offsets if off not in self._cache]
        if not missing:
            return
        pts = self.u0 + self.h * np.array(missing, dtype=float)
        g_neutral, g_flat = self.chart.grams_many(pts)
        for off, gn, gf in zip(missing, g_neutral, g_flat):
            self._cache[off] = (gn, gf)

    def gram(self, offset, kind: str) -> np.ndarray:
        off = tuple(int(v) for v in offset)
        if off not in self._cache:
            self.prefetch([off])
        gn, gf = self._cache[off]
        if kind == "G":
            return gn
        if kind == "G_e":
            return gf
        raise GeometryError(f"unknown metric kind {kind!r}")


def _axis_offsets(n2: int):
    plus = [tuple(int(v) for v in row) for row in np.eye(n2, dtype=int)]
    minus = [tuple(-v for v in row) for row in plus]
    return plus, minus


def _gamma_from_stencil(st: MetricStencil, center, kind: str) -> np.ndarray:
    n2 = 2 * st.chart.n
    center = np.asarray(center, dtype=int)
    g0 = st.gram(center, kind)
    try:
        ginv = np.linalg.inv(g0)
    except np.linalg.LinAlgError as exc:
        raise GeometryError("singular pulled-back Gram matrix") from exc
    dg = np.empty((n2, n2, n2))
    eye = np.eye(n2, dtype=int)
    for i in range(n2):
        dg[i] = (
            st.gram(center + eye[i], kind) - st.gram(center - eye[i], kind)
        ) / (2 * st.h)
    # sym[i,j,l] = d_i g_jl + d_j g_il - d_l g_ij
    sym = dg + np.einsum("jil->ijl", dg) - np.einsum("lij->ijl", dg)
    return 0.5 * np.einsum("kl,ijl->kij", ginv, sym)


def christoffel(
    chart: Chart, u=None, kind: str = "G", h: float = DEFAULT_STEP
) -> np.ndarray:
    """Christoffel symbols Gamma[k, i, j] of the pulled-back metric at u.

    Metric derivatives are 2nd-order central differences with step ``h``;
    the result is symmetric in (i, j) by construction.
    """
    n2 = 2 * chart.n
    u = np.zeros(n2) if u is None else np.asarray(u, dtype=float)
    st = MetricStencil(chart, u, h)
    plus, minus = _axis_offsets(n2)
    st.prefetch([tuple([0] * n2)] + plus + minus)
    return _gamma_from_stencil(st, np.zeros(n2, dtype=int), kind)


def riemann(
    chart: Chart, u=None, kind: str = "G", h: float = DEFAULT_STEP
):
    """Curvature data at u: (R13, R4, g0, ginv).

    R13[l, i, j, k] is the component along direction l of R(d_i, d_j) d_k
    computed from central differences of the Christoffel symbols; R4 is
    the fully covariant tensor lowered with the requested metric.
    """
    n2 = 2 * chart.n
    u = np.zeros(n2) if u is None else np.asarray(u, dtype=float)
    st = MetricStencil(chart, u, h)

    eye = np.eye(n2, dtype=int)
    offsets = [tuple([0] * n2)]
    for i in range(n2):
        for sgn in (1, -1):
            offsets.append(tuple(sgn * eye[i]))
            offsets.append(tuple(2 * sgn * eye[i]))
    for i in range(n2):
        for j in range(i + 1, n2):
            for si in (1, -1):
                for sj in (1, -1):
                    offsets.append(tuple(si * eye[i] + sj * eye[j]))
    st.prefetch(offsets)

    zero = np.zeros(n2, dtype=int)
    gamma0 = _gamma_from_stencil(st, zero, kind)
    dgamma = np.empty((n2, n2, n2, n2))
    for i in range(n2):
        gp = _gamma_from_stencil(st, eye[i], kind)
        gm = _gamma_from_stencil(st, -eye[i], kind)
        dgamma[i] = (gp - gm) / (2 * st.h)

    # R13[l,i,j,k] = d_i Gamma^l_jk - d_j Gamma^l_ik
    #               + Gamma^l_im Gamma^m_jk - Gamma^l_jm Gamma^m_ik
    r13 = (
        dgamma.transpose(1, 0, 2, 3)
        - dgamma.transpose(1, 2, 0, 3)
        + np.einsum("lim,mjk->lijk", gamma0, gamma0)
        - np.einsum("ljm,mik->lijk", gamma0, gamma0)
    )
    g0 = st.gram(zero, kind)
    r4 = np.einsum("mijk,ml->ijkl", r13, g0)
    return r13, r4, g0, np.linalg.inv(g0)


def frame_components(chart: Chart, u=None) -> np.ndarray:
    """Matrix B with frame tangent E_a = sum_k B[k, a] * (chart direction k).

    Computed at map(u) against the frame basis of that representative.
    """
    n2 = 2 * chart.n
    u = np.zeros(n2) if u is None else np.asarray(u, dtype=float)
    x, y, X, Y = chart.jacobian_many(np.atleast_2d(u))
    geo = make_geodesic(x[0], y[0], chart.c)
    basis = frame_basis(geo)
    stack = np.concatenate([X[0], Y[0]], axis=1)  # (2n, 2 dim)
    targets = np.stack([np.concatenate([t.X, t.Y]) for t in basis], axis=1)
    sol, *_ = np.linalg.lstsq(stack.T, targets, rcond=None)
    return sol
