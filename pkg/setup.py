"""Build script for the optional compiled kernel.

The package works without the extension (a pure-Python twin is selected at
import time), so the build is marked optional and a failed compile only
costs speed. -ffp-contract=off keeps the compiled arithmetic bit-identical
to the pure-Python kernel: no fused multiply-adds.
"""
import sys

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = []
if cythonize is not None:
    compile_args = []
    if not sys.platform.startswith("win"):
        compile_args = ["-O2", "-ffp-contract=off"]
    ext = Extension(
        "dlsrr._kernels._fast",
        sources=["src/dlsrr/_kernels/_fast.pyx"],
        extra_compile_args=compile_args,
    )
    ext.optional = True
    extensions = cythonize([ext], language_level="3")

setup(ext_modules=extensions)
