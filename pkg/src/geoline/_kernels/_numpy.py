"""NumPy implementation of the chart sampling kernels.

These are the hot kernels of the package: evaluating the local chart of
the geodesic space and the Gram matrices of its two pulled-back metrics on
batches of chart points.  The compiled twin in ``_speedups.pyx`` follows
the exact same formulas; ``tests/test_kernels.py`` pins the parity.

Chart convention: around a base pair (x0, y0) with complement frame
e_1..e_n the chart point u = (a, b) maps to

    x(u) = normalize_c(x0 + sum_i a_i e_i)
    y(u) = orthonormalize_against_x(y0 + sum_i b_i e_i)

and the Jacobian columns are returned already decomposed into tangent
pairs (X_k, Y_k) at (x(u), y(u)).
"""

from __future__ import annotations

import numpy as np

_TOL = 1e-12


class KernelDomainError(ValueError):
    """Chart point outside the domain where the normalizations are defined."""


def _signs(dim: int, c: int) -> np.ndarray:
    s = np.full(dim, float(c))
    s[0] = 1.0
    return s


def _prepare(x0, y0, frame, c, U):
    x0 = np.ascontiguousarray(x0, dtype=float)
    y0 = np.ascontiguousarray(y0, dtype=float)
    frame = np.ascontiguousarray(frame, dtype=float)
    U = np.ascontiguousarray(U, dtype=float)
    if U.ndim != 2 or U.shape[1] != 2 * frame.shape[0]:
        raise ValueError("chart points must have shape (m, 2n)")
    if frame.shape[1] != x0.shape[0] or y0.shape[0] != x0.shape[0]:
        raise ValueError("frame/base dimension mismatch")
    return x0, y0, frame, int(c), U


def _map_arrays(x0, y0, frame, c, U, s):
    n = frame.shape[0]
    a = U[:, :n]
    b = U[:, n:]
    x_raw = x0 + a @ frame
    q = np.sum(x_raw * x_raw * s, axis=-1)
    if np.any(q <= _TOL):
        raise KernelDomainError("chart x-normalization degenerates")
    sq = np.sqrt(q)
    x = x_raw / sq[:, None]
    y_raw = y0 + b @ frame
    sv = np.sum(y_raw * x * s, axis=-1)
    w = y_raw - sv[:, None] * x
    r = np.sum(w * w * s, axis=-1)
    if np.any(c * r <= _TOL):
        raise KernelDomainError("chart y-normalization degenerates")
    scale = np.sqrt(c / r)
    y = w * scale[:, None]
    return x_raw, q, sq, x, y_raw, sv, w, r, scale, y


def chart_map(x0, y0, frame, c, U):
    """Chart evaluation on a batch: returns (x, y), each (m, dim)."""
    x0, y0, frame, c, U = _prepare(x0, y0, frame, c, U)
    s = _signs(x0.shape[0], c)
    out = _map_arrays(x0, y0, frame, c, U, s)
    return out[3], out[9]


def chart_jacobian(x0, y0, frame, c, U):
    """Chart points plus decomposed coordinate tangents.

    Returns (x, y, X, Y) with X, Y of shape (m, 2n, dim): direction k of
    the chart corresponds, at (x(u), y(u)), to the tangent pair
    (X[:, k], Y[:, k]).
    """
    x0, y0, frame, c, U = _prepare(x0, y0, frame, c, U)
    dim = x0.shape[0]
    n = frame.shape[0]
    m = U.shape[0]
    s = _signs(dim, c)
    x_raw, q, sq, x, y_raw, sv, w, r, scale, y = _map_arrays(
        x0, y0, frame, c, U, s
    )

    sframe_t = (frame * s).T  # (dim, n)

    # d x / d a_i = e_i / sqrt(Q) - x * dQ_i / (2 Q)
    dq = 2.0 * x_raw @ sframe_t  # (m, n)
    dxa = frame[None, :, :] / sq[:, None, None] - (
        (dq / (2.0 * q[:, None]))[:, :, None] * x[:, None, :]
    )
    # y-part response to a-directions through x(u)
    dsa = np.einsum("md,mid->mi", y_raw * s, dxa)
    dwa = -dsa[:, :, None] * x[:, None, :] - sv[:, None, None] * dxa
    dra = 2.0 * np.einsum("md,mid->mi", w * s, dwa)
    dya = scale[:, None, None] * (
        dwa - w[:, None, :] * (dra / (2.0 * r[:, None]))[:, :, None]
    )

    # b-directions: x is unaffected
    dsb = x @ sframe_t  # (m, n)
    dwb = frame[None, :, :] - dsb[:, :, None] * x[:, None, :]
    drb = 2.0 * np.einsum("md,mid->mi", w * s, dwb)
    dyb = scale[:, None, None] * (
        dwb - w[:, None, :] * (drb / (2.0 * r[:, None]))[:, :, None]
    )

    dx_all = np.concatenate([dxa, np.zeros((m, n, dim))], axis=1)
    dy_all = np.concatenate([dya, dyb], axis=1)

    def perp(v):
        vx = np.einsum("mkd,md->mk", v, x * s)
        vy = np.einsum("mkd,md->mk", v, y * s)
        return v - vx[:, :, None] * x[:, None, :] - c * vy[:, :, None] * y[:, None, :]

    X = perp(dy_all)
    Y = -perp(dx_all)
    return x, y, X, Y


def chart_grams(x0, y0, frame, c, U):
    """Gram matrices of both pulled-back metrics at a batch of points.

    Returns (gG, gGe), each (m, 2n, 2n):
      gG[k,l]  = <X_k, Y_l>_c + <X_l, Y_k>_c
      gGe[k,l] = <X_k, X_l>_c + c <Y_k, Y_l>_c
    """
    x0, y0, frame, c, U = _prepare(x0, y0, frame, c, U)
    s = _signs(x0.shape[0], c)
    _, _, X, Y = chart_jacobian(x0, y0, frame, c, U)
    sX = X * s
    cross = np.einsum("mkd,mld->mkl", sX, Y)
    g_neutral = cross + np.swapaxes(cross, 1, 2)
    g_flat = np.einsum("mkd,mld->mkl", sX, X) + c * np.einsum(
        "mkd,mld->mkl", Y * s, Y
    )
    return g_neutral, g_flat
