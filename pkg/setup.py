import sys

from setuptools import setup

# The compiled kernel is an optional speedup: if Cython or a C compiler is
# unavailable the package falls back to the NumPy implementation at import
# time (see geoline._kernels).
ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "geoline._kernels._speedups",
                ["src/geoline/_kernels/_speedups.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    sys.stderr.write(f"geoline: skipping compiled kernels ({exc})\n")

setup(ext_modules=ext_modules)
