"""Build script for the optional compiled lattice kernels.

The package is fully functional without the extension (a numpy fallback is
selected at import time), so any failure to cythonize or compile downgrades
to a pure-Python build instead of aborting the install.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "axiometer._kernels._lattice_cy",
                ["src/axiometer/_kernels/_lattice_cy.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
