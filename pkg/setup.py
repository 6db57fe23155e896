"""Build script: compiles the optional averaging kernel extension.

The package works without the extension (a NumPy fallback is selected at
import time), so a failed compile only costs speed, not correctness.
"""

import os

from setuptools import setup


def extensions():
    if os.environ.get("SPECTRAL_LIFT_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        ["src/spectral_lift/_kernels/_avg_cy.pyx"],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )


setup(ext_modules=extensions())
