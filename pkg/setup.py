import platform

from setuptools import Extension, setup
from Cython.Build import cythonize

flags = ["-O3"]
if platform.machine() in ("x86_64", "AMD64"):
    flags.append("-mpopcnt")  # hardware popcount for the rank/select scans

setup(
    ext_modules=cythonize(
        [
            Extension(
                "lyndonarray._ckernels",
                ["src/lyndonarray/_ckernels.pyx"],
                extra_compile_args=flags,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
)
