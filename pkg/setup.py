import os

from setuptools import Extension, setup

# The compiled sweep-walk kernel is optional: without it the package falls
# back to the pure-Python implementation at import time (see mmwicd.sweepsim).
ext_modules = []
if not os.environ.get("MMWICD_SKIP_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "mmwicd._sweepwalk",
                    ["src/mmwicd/_sweepwalk.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
