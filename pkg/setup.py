"""Build script: compiles the optional Cython kernel when Cython is available.

The package works without the extension; ``littlelab.kernels`` falls back to
the pure-Python twin at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/littlelab/_kernels_cy.pyx"],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
