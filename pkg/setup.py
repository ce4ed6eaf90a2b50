"""Build script: compiles the optional C extension with the hot ROUGE kernels.

The package works without the extension (a pure-Python fallback is selected
at import time), so any build failure here only costs speed.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/qfse/rouge/_speedups.pyx"],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
