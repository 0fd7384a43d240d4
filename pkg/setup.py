"""Optional Cython build of the arithmetic kernels.

The package works without a compiler: when Cython or a C toolchain is
missing the extension is skipped and the pure-Python kernels are used.
Set PWSYS_NO_EXT=1 to skip the build deliberately.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("PWSYS_NO_EXT", "") not in ("1", "true", "yes"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            ["src/pwsys/algebra/_ckernels.pyx"],
            compiler_directives={"language_level": "3"},
            quiet=True,
        )

setup(ext_modules=ext_modules)
