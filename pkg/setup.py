"""Builds the optional Cython DTW kernel.

The package works without it: storymix.arc.dtw falls back to the pure-Python
kernel when the compiled module is absent.  Build in place with

    python setup.py build_ext --inplace
"""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/storymix/arc/_dtw_cy.pyx"],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
