"""Build script: compiles the optional propagator extension when possible.

The package works without the extension (a numpy fallback is selected at
import time), so any failure here only costs speed, never functionality.
"""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:
            warnings.warn(f"compiled kernels skipped: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"extension {ext.name} skipped: {exc}")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [
            Extension(
                "ramanphoton._kernels._core",
                ["src/ramanphoton/_kernels/_core.pyx"],
            )
        ],
        language_level=3,
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
