"""Curvature diagnostics of the neutral metric on the geodesic space.

Everything is assembled from chart samples: Ricci is the trace of the
(1,3) curvature tensor (metric free), the scalar is its metric trace, and
the conformal part is extracted with the Kulkarni-Nomizu correction.  The
reported components live in the adapted frame basis E_1..E_2n.

Conventions (fixed once, verified by the suites): R(X,Y)Z uses the sign
with positive sectional curvature on round spheres, Rm(X,Y,Z,W) =
G(R(X,Y)Z, W), and (h o k)(X,Y,Z,W) = h(X,W)k(Y,Z) + h(Y,Z)k(X,W) -
h(X,Z)k(Y,W) - h(Y,W)k(X,Z).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .charts import Chart, chart_at, frame_components, riemann
from .geodesics import OrientedGeodesic, frame_basis, metric_G, metric_Ge

__all__ = [
    "ricci_from_r13",
    "kulkarni_nomizu",
    "weyl_reduced",
    "weyl_full",
    "transform4",
    "CurvatureReport",
    "curvature_report",
]


def ricci_from_r13(r13: np.ndarray) -> np.ndarray:
    """Ricci tensor Ric[j, k] = sum_i R13[i, i, j, k]."""
    return np.einsum("iijk->jk", r13)


def kulkarni_nomizu(h: np.ndarray, k: np.ndarray) -> np.ndarray:
    """Kulkarni-Nomizu product of two symmetric 2-tensors."""
    return (
        np.einsum("il,jk->ijkl", h, k)
        + np.einsum("jk,il->ijkl", h, k)
        - np.einsum("ik,jl->ijkl", h, k)
        - np.einsum("jl,ik->ijkl", h, k)
    )


def weyl_reduced(r4: np.ndarray, ric: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Conformal curvature for a scalar-flat metric: Rm - Ric o g / (m - 2)."""
    m = g.shape[0]
    return r4 - kulkarni_nomizu(ric, g) / (m - 2)


def weyl_full(
    r4: np.ndarray, ric: np.ndarray, g: np.ndarray, scalar: float
) -> np.ndarray:
    """Full Weyl formula, kept as a cross-check against the reduced one."""
    m = g.shape[0]
    traceless = ric - (scalar / m) * g
    return (
        r4
        - kulkarni_nomizu(traceless, g) / (m - 2)
        - (scalar / (2.0 * m * (m - 1))) * kulkarni_nomizu(g, g) / 2.0
    )


def transform4(t4: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """Change all four covariant slots by the column basis matrix."""
    return np.einsum("ijkl,ia,jb,kc,ld->abcd", t4, basis, basis, basis, basis)


@dataclass
class CurvatureReport:
    """Frame-basis curvature summary of the neutral metric at one point."""

    n: int
    c: int
    point_id: str
    scalar: float
    ricci: np.ndarray
    ricci_max_err: float
    einstein_witness: tuple[float, float]  # (|Ric(E1,E1)|, |G(E1,E1)|)
    weyl_sup: float
    weyl_samples: list[tuple[tuple[int, int, int, int], float]]
    weyl_formula_gap: float
    scalar_flat_companion: float  # scalar curvature of the flat-restriction metric
    companion_ricci_max_err: float
    connection_gap: float  # max |Gamma(G) - Gamma(G_e)|
    tolerances: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "c": self.c,
            "point": self.point_id,
            "scalar": self.scalar,
            "ricci_max_err": self.ricci_max_err,
            "einstein_witness_ric": self.einstein_witness[0],
            "einstein_witness_g": self.einstein_witness[1],
            "weyl_sup": self.weyl_sup,
            "weyl_samples": [
                {"index": list(idx), "value": val} for idx, val in self.weyl_samples
            ],
            "weyl_formula_gap": self.weyl_formula_gap,
            "companion_scalar": self.scalar_flat_companion,
            "companion_ricci_max_err": self.companion_ricci_max_err,
            "connection_gap": self.connection_gap,
            "tolerances": dict(self.tolerances),
        }


def _frame_grams(geo: OrientedGeodesic):
    basis = frame_basis(geo)
    n2 = len(basis)
    g = np.empty((n2, n2))
    ge = np.empty((n2, n2))
    for a in range(n2):
        for b in range(a, n2):
            g[a, b] = g[b, a] = metric_G(basis[a], basis[b])
            ge[a, b] = ge[b, a] = metric_Ge(basis[a], basis[b])
    return g, ge


def curvature_report(
    geo: OrientedGeodesic,
    h: float = 1e-3,
    point_id: str = "",
    chart: Chart | None = None,
) -> CurvatureReport:
    """Compute the curvature verification data for one geodesic.

    Both metrics are processed from the same chart: the neutral metric
    supplies the main report, the flat-restriction metric the Einstein
    companion checks, and the two Christoffel fields the shared-connection
    gap.
    """
    n = geo.n
    c = geo.c
    chart = chart_at(geo) if chart is None else chart

    r13_g, r4_g, _, _ = riemann(chart, kind="G", h=h)
    r13_e, _, _, _ = riemann(chart, kind="G_e", h=h)

    basis_mat = frame_components(chart)
    gf, gef = _frame_grams(chart.base)
    gf_inv = np.linalg.inv(gf)
    gef_inv = np.linalg.inv(gef)

    ric = ricci_from_r13(r13_g)
    ric_f = basis_mat.T @ ric @ basis_mat
    scalar = float(np.einsum("jk,jk->", gf_inv, ric_f))
    ricci_max_err = float(np.max(np.abs(ric_f - c * n * gef)))

    r4_f = transform4(r4_g, basis_mat)
    weyl = weyl_reduced(r4_f, ric_f, gf)
    weyl_sup = float(np.max(np.abs(weyl)))
    weyl_alt = weyl_full(r4_f, ric_f, gf, scalar)
    weyl_gap = float(np.max(np.abs(weyl - weyl_alt)))

    # canonical sampled component plus the largest entries, for the record
    canonical = (0, 1, 1, n)
    samples = [(canonical, float(weyl[canonical]))]
    flat_idx = np.argsort(np.abs(weyl), axis=None)[::-1][:4]
    for fi in flat_idx:
        idx = tuple(int(v) for v in np.unravel_index(fi, weyl.shape))
        samples.append((idx, float(weyl[idx])))

    # companion metric: Ricci is metric-free, its own trace gives the scalar
    ric_e = basis_mat.T @ ricci_from_r13(r13_e) @ basis_mat
    companion_scalar = float(np.einsum("jk,jk->", gef_inv, ric_e))
    companion_err = float(np.max(np.abs(ric_e - c * n * gef)))

    from .charts import christoffel

    gamma_gap = float(
        np.max(np.abs(christoffel(chart, kind="G", h=h) - christoffel(chart, kind="G_e", h=h)))
    )

    return CurvatureReport(
        n=n,
        c=c,
        point_id=point_id,
        scalar=scalar,
        ricci=ric_f,
        ricci_max_err=ricci_max_err,
        einstein_witness=(abs(float(ric_f[0, 0])), abs(float(gf[0, 0]))),
        weyl_sup=weyl_sup,
        weyl_samples=samples,
        weyl_formula_gap=weyl_gap,
        scalar_flat_companion=companion_scalar,
        companion_ricci_max_err=companion_err,
        connection_gap=gamma_gap,
    )
