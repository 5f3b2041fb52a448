"""Build script: compiles the optional query-kernel extension.

The package is fully functional without the extension (a pure-Python
backend is selected at import time); set RANKSEL_NO_EXT=1 to skip the
compile step entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("RANKSEL_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "ranksel._kernels",
                    ["src/ranksel/_kernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
