"""Build script: compiles the optional _speedups extension.

The extension is a performance kernel only; the package falls back to the
pure-Python implementations in itoflow._kernels_py when the compiled module
is unavailable, so a failed build is downgraded to a warning.
"""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler or toolchain missing
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            f"WARNING: building itoflow._speedups failed ({exc}); "
            "falling back to the pure-Python kernels.",
            file=sys.stderr,
        )


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print(
            "WARNING: Cython not available; installing without compiled kernels.",
            file=sys.stderr,
        )
        return []
    ext = Extension(
        "itoflow._speedups",
        ["src/itoflow/_speedups.pyx"],
        extra_compile_args=["-O2"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
