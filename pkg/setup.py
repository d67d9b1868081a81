import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # extension is optional; the pure-Python kernel is used instead
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("NALG_NO_EXTENSION"):
    ext_modules = cythonize(
        [Extension("nalg._kernels", ["src/nalg/_kernels.pyx"], extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
