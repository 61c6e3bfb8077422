"""Build script for the optional compiled geometry kernel.

The package is pure Python except for sewkit/kernel/_native.pyx, which
accelerates Bezier arc-length and curvature evaluation.  If the extension
cannot be compiled (no compiler, SEWKIT_SKIP_NATIVE=1, ...) the install
falls back to the pure-Python kernel selected at import time.
"""

import os
import sys

from setuptools import setup

ext_modules = []
cmdclass = {}

if os.environ.get("SEWKIT_SKIP_NATIVE", "") not in ("1", "true", "yes"):
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools.extension import Extension

        ext = Extension(
            "sewkit.kernel._native",
            ["src/sewkit/kernel/_native.pyx"],
            include_dirs=[numpy.get_include()],
            define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            extra_compile_args=["-O3"],
        )
        ext_modules = cythonize(
            [ext],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except Exception as exc:  # pragma: no cover - build environment dependent
        sys.stderr.write(f"sewkit: skipping native kernel build ({exc})\n")
        ext_modules = []

setup(ext_modules=ext_modules, cmdclass=cmdclass)
