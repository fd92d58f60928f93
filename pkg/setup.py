import os

from setuptools import Extension, setup

# The compiled pivot kernel is an optional speedup: if Cython or a C
# compiler is unavailable the package falls back to the numpy kernel
# selected at import time in persuade._kernel.
ext_modules = []
if os.environ.get("PERSUADE_SKIP_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "persuade._core",
                    ["src/persuade/_core.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
