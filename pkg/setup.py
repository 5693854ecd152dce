"""Build hook for the optional compiled elimination engine.

The package is pure Python plus one Cython extension
(lieinv.paramlinalg._speedups) that mirrors lieinv.paramlinalg._engine_py.
The extension is optional: if Cython or a C compiler is missing the build
carries on and the pure engine is used at import time.
"""

import os

from setuptools import setup
from setuptools.extension import Extension

ext_modules = []
if os.environ.get("LIEINV_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "lieinv.paramlinalg._speedups",
                    ["src/lieinv/paramlinalg/_speedups.pyx"],
                    extra_compile_args=["-O3"],
                    optional=True,
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
