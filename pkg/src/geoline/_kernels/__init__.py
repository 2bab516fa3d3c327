"""Kernel backend selection.

The compiled Cython kernels are preferred when the extension was built;
otherwise the NumPy implementation is used.  Force a backend with the
environment variable GEOLINE_KERNEL in {"auto", "cython", "numpy"}.
"""

from __future__ import annotations

import os

from ._numpy import KernelDomainError

_requested = os.environ.get("GEOLINE_KERNEL", "auto").lower()
if _requested not in {"auto", "cython", "numpy"}:
    raise RuntimeError(
        f"GEOLINE_KERNEL must be auto, cython or numpy (got {_requested!r})"
    )

BACKEND = "numpy"
if _requested in {"auto", "cython"}:
    try:
        from . import _speedups as _impl

        if not hasattr(_impl, "chart_grams"):
            raise ImportError("compiled kernels incomplete")
        BACKEND = "cython"
    except ImportError:
        if _requested == "cython":
            raise
        from . import _numpy as _impl
else:
    from . import _numpy as _impl

chart_map = _impl.chart_map
chart_jacobian = _impl.chart_jacobian
chart_grams = _impl.chart_grams

__all__ = [
    "BACKEND",
    "KernelDomainError",
    "chart_map",
    "chart_jacobian",
    "chart_grams",
]
