"""Build script for the optional compiled kernels.

The package is fully functional without the extension: ``exemplar_forge.kernels``
falls back to pure-Python implementations when the compiled module is absent.
"""

import sys

from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension

    extensions = cythonize(
        [
            Extension(
                "exemplar_forge.kernels._speedups",
                ["src/exemplar_forge/kernels/_speedups.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - depends on build host
    print(f"warning: building without compiled kernels ({exc})", file=sys.stderr)
    extensions = []

setup(ext_modules=extensions)
