"""Build script: compiles the optional speedup extension when Cython is present.

The package is fully functional without the extension; mipoly.kernels falls
back to the pure-Python twin at import time.
"""

import os

from setuptools import Extension, setup

ext_modules = []
pyx = os.path.join("src", "mipoly", "kernels", "_speed.pyx")
if os.path.exists(pyx):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("mipoly.kernels._speed", [pyx])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
