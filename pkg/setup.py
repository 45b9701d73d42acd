"""Build script: compiles the simplex pivot kernel when Cython and a C
compiler are available.  The package falls back to the pure-NumPy kernel at
import time, so a build without the extension is still fully functional.

Set FACETBENCH_SKIP_EXT=1 to skip the extension build entirely.
"""

import os

from setuptools import Extension, setup


def extensions():
    if os.environ.get("FACETBENCH_SKIP_EXT") == "1":
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "facetbench._simplex_core",
        ["src/facetbench/_simplex_core.pyx"],
        # -ffp-contract=off keeps the C arithmetic bit-compatible with the
        # NumPy fallback (no fused multiply-add in the pivot update).
        extra_compile_args=["-O2", "-ffp-contract=off"],
    )
    return cythonize(
        [ext],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "initializedcheck": False,
        },
    )


setup(ext_modules=extensions())
