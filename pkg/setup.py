from setuptools import setup

# The compiled kernels are an optional speedup. A plain
# `pip install .` on a box without Cython (or without a C
# compiler) must still produce a fully working package: the
# runtime falls back to trilor._kernels_py automatically.
try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is None:
    ext_modules = []
else:
    ext_modules = cythonize(
        "src/trilor/_core.pyx",
        language_level=3,
    )

setup(ext_modules=ext_modules)
