"""Builds the optional compiled Hausdorff kernel; the package works without it."""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("MVFIX_NO_EXTENSION"):
    try:
        import numpy  # noqa: F401  (build-time check only)
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("mvfix._kernel", ["src/mvfix/_kernel.pyx"], extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
