"""Build script: compiles the optional C extension for the hot kernels.

The package is fully functional without the extension (a NumPy fallback is
selected at import time), so any compilation failure downgrades to a pure
Python install instead of aborting.
"""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext
from setuptools.errors import CCompilerError, ExecError, PlatformError


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except (PlatformError, FileNotFoundError) as exc:
            self._skip(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except (CCompilerError, ExecError, PlatformError, ValueError) as exc:
            self._skip(exc)

    def _skip(self, exc):
        print(f"WARNING: building mpdec._speedups failed ({exc}); "
              "installing with the pure NumPy backend only.", file=sys.stderr)


def extensions():
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError as exc:
        print(f"WARNING: {exc}; skipping mpdec._speedups, "
              "the pure NumPy backend will be used.", file=sys.stderr)
        return []
    return cythonize(
        [
            Extension(
                "mpdec._speedups",
                ["src/mpdec/_speedups.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
