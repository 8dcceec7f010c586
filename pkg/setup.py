"""Build the optional compiled kernel extension.

The package is fully functional without it (pure-Python kernels are selected
at import time when the extension is missing); building it makes the hot
loops (contraction sums, exact integer elimination) much faster:

    pip install -e . --no-build-isolation
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "localinv._speedups",
                sources=["src/localinv/_speedups.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "language_level": "3",
        },
    )
else:
    ext_modules = []

setup(ext_modules=ext_modules)
