"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (a pure-Python/numpy fallback is
selected at import time); the compiled kernels make the Monte Carlo paths
roughly 30-100x faster. Set NCPART_SKIP_EXT=1 to skip compilation.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("NCPART_SKIP_EXT"):
    try:
        import numpy
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "ncpart._kernels._ckernels",
                    ["src/ncpart/_kernels/_ckernels.pyx"],
                    extra_compile_args=["-O3"],
                    include_dirs=[numpy.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
