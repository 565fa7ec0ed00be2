"""Build the optional Cython kernel; the package falls back to pure Python without it."""
import os
import sys

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("NETEXT_NO_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError:
        print("netext: Cython/numpy unavailable, skipping compiled kernel", file=sys.stderr)
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "netext._ext._louvain",
                    ["src/netext/_ext/_louvain.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3", "-ffp-contract=off"] if sys.platform != "win32" else ["/O2"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )

setup(ext_modules=ext_modules)
