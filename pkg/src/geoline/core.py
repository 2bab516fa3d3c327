"""Signature-aware linear algebra on R^(n+2) and its packed bivectors.

All geometry in this package is expressed through the one-parameter family
of symmetric bilinear forms

    <u, v>_c = u_0 v_0 + c * (u_1 v_1 + ... + u_{n+1} v_{n+1}),   c in {-1, +1},

so that c = +1 is the round-sphere model of the ambient quadric and c = -1
the hyperboloid model.  Bivectors are stored packed, one coefficient per
ordered pair (a, b) with a < b in lexicographic order
(0,1), (0,2), ..., (n, n+1).
"""

from __future__ import annotations

import functools
import math

import numpy as np

__all__ = [
    "GeometryError",
    "check_curvature_sign",
    "form_signs",
    "inner",
    "norm_sq",
    "wedge",
    "pair_indices",
    "packed_length",
    "dim_from_packed",
    "biv_weights",
    "biv_inner",
    "bivector_matrix",
    "contract",
    "complement_frame",
    "is_form_isometry",
]


class GeometryError(Exception):
    """Numerical data does not describe a valid geometric object."""


def check_curvature_sign(c) -> int:
    """Validate the curvature sign; the flat case c = 0 is rejected."""
    if c not in (-1, 1):
        raise GeometryError(f"curvature sign must be -1 or +1, got {c!r}")
    return int(c)


@functools.lru_cache(maxsize=None)
def _signs(dim: int, c: int) -> np.ndarray:
    s = np.full(dim, float(c))
    s[0] = 1.0
    s.setflags(write=False)
    return s


def form_signs(dim: int, c) -> np.ndarray:
    """Diagonal of the form <.,.>_c: (1, c, ..., c), read-only."""
    return _signs(int(dim), check_curvature_sign(c))


def _as_float(arr) -> np.ndarray:
    out = np.asarray(arr, dtype=float)
    if not np.all(np.isfinite(out)):
        raise GeometryError("non-finite entries in vector data")
    return out


def inner(u, v, c):
    """<u, v>_c, bilinear and symmetric.  Broadcasts over leading axes."""
    u = _as_float(u)
    v = _as_float(v)
    if u.shape[-1] != v.shape[-1]:
        raise GeometryError(
            f"dimension mismatch: {u.shape[-1]} vs {v.shape[-1]}"
        )
    s = form_signs(u.shape[-1], c)
    return np.sum(u * v * s, axis=-1)


def norm_sq(u, c):
    """<u, u>_c (may be negative for c = -1)."""
    return inner(u, u, c)


@functools.lru_cache(maxsize=None)
def _pair_indices(dim: int):
    ia, ib = np.triu_indices(dim, k=1)
    ia.setflags(write=False)
    ib.setflags(write=False)
    return ia, ib


def pair_indices(dim: int):
    """Index pair arrays (a, b), a < b, in packed storage order."""
    return _pair_indices(int(dim))


def packed_length(dim: int) -> int:
    return dim * (dim - 1) // 2


@functools.lru_cache(maxsize=None)
def dim_from_packed(length: int) -> int:
    dim = int(round((1 + math.isqrt(1 + 8 * length)) / 2))
    if packed_length(dim) != length:
        raise GeometryError(f"{length} is not a packed bivector length")
    return dim


def wedge(x, y) -> np.ndarray:
    """Packed components of x ^ y: slot (a, b) holds x_a y_b - x_b y_a."""
    x = _as_float(x)
    y = _as_float(y)
    if x.shape[-1] != y.shape[-1]:
        raise GeometryError(
            f"dimension mismatch: {x.shape[-1]} vs {y.shape[-1]}"
        )
    ia, ib = pair_indices(x.shape[-1])
    return x[..., ia] * y[..., ib] - x[..., ib] * y[..., ia]


@functools.lru_cache(maxsize=None)
def _biv_weights(dim: int, c: int) -> np.ndarray:
    s = _signs(dim, c)
    ia, ib = _pair_indices(dim)
    w = s[ia] * s[ib]
    w.setflags(write=False)
    return w


def biv_weights(dim: int, c) -> np.ndarray:
    """Diagonal of the flat bivector metric in the packed basis."""
    return _biv_weights(int(dim), check_curvature_sign(c))


def biv_inner(b1, b2, c):
    """Flat metric on bivectors induced by <.,.>_c.

    The packed coordinate bivectors e_a ^ e_b are orthogonal for this form
    with squared length s_a * s_b, so the bilinear extension of the 2x2
    Gram-determinant rule on decomposables is a weighted dot product.
    """
    b1 = _as_float(b1)
    b2 = _as_float(b2)
    if b1.shape[-1] != b2.shape[-1]:
        raise GeometryError("packed bivector length mismatch")
    w = biv_weights(dim_from_packed(b1.shape[-1]), c)
    return np.sum(b1 * b2 * w, axis=-1)


def bivector_matrix(b, dim: int | None = None) -> np.ndarray:
    """Unpack to the antisymmetric matrix M with M[a, b] = coefficient."""
    b = _as_float(b)
    if dim is None:
        dim = dim_from_packed(b.shape[-1])
    ia, ib = pair_indices(dim)
    m = np.zeros(b.shape[:-1] + (dim, dim))
    m[..., ia, ib] = b
    m[..., ib, ia] = -b
    return m


def contract(b, v, c) -> np.ndarray:
    """Metric contraction (b ⌟ v)_a = sum_b M[a, b] s_b v_b.

    On decomposables (u ^ w) ⌟ v = u <w, v>_c - w <u, v>_c.
    """
    v = _as_float(v)
    m = bivector_matrix(b, v.shape[-1])
    s = form_signs(v.shape[-1], c)
    return m @ (s * v)


def complement_frame(x, y, c, tol: float = 1e-10) -> list[np.ndarray]:
    """Orthogonal completion e_1..e_n of the nondegenerate plane (x, y).

    Expects <x,x>_c = 1, <y,y>_c = c, <x,y>_c = 0 (to 1e-6).  Returns n =
    dim-2 vectors with <e_i, x>_c = <e_i, y>_c = 0 and <e_i, e_j>_c =
    c * delta_ij; this normalization keeps the plane complement's Gram
    matrix equal to c * I in both models.  Gram-Schmidt sweeps the standard
    basis, orthogonalizing against x, then y, then the accepted e_i, and
    drops near-null intermediates (|<v,v>_c| < tol).
    """
    c = check_curvature_sign(c)
    x = _as_float(x)
    y = _as_float(y)
    dim = x.shape[-1]
    if y.shape[-1] != dim:
        raise GeometryError("dimension mismatch between plane vectors")

    gxx = float(inner(x, x, c))
    gyy = float(inner(y, y, c))
    gxy = float(inner(x, y, c))
    if abs(gxx - 1.0) > 1e-6 or abs(gyy - c) > 1e-6 or abs(gxy) > 1e-6:
        raise GeometryError("plane vectors violate the constraint equations")
    if abs(gxx * gyy - gxy * gxy) < tol:
        raise GeometryError("degenerate plane: Gram determinant below tolerance")

    frame: list[np.ndarray] = []
    n = dim - 2
    for k in range(dim):
        v = np.zeros(dim)
        v[k] = 1.0
        v = v - float(inner(v, x, c)) / gxx * x
        v = v - float(inner(v, y, c)) / gyy * y
        for e in frame:
            v = v - float(inner(v, e, c)) * c * e  # <e,e>_c = c, 1/c = c
        q = float(inner(v, v, c))
        if abs(q) < tol:
            continue
        if q * c < 0:
            raise GeometryError(
                "complement signature inconsistent with the model: "
                f"<v,v>_c = {q:g} with c = {c}"
            )
        frame.append(v * math.sqrt(c / q))
        if len(frame) == n:
            break
    if len(frame) != n:
        raise GeometryError("could not complete the frame (near-null sweep)")
    return frame


def is_form_isometry(m, c, tol: float = 1e-10) -> bool:
    """Whether M^T S M = S for the form matrix S = diag(1, c, ..., c)."""
    m = _as_float(m)
    s = form_signs(m.shape[-1], c)
    res = m.T @ (s[:, None] * m) - np.diag(s)
    return float(np.max(np.abs(res))) <= tol
