"""Build script for the optional compiled search kernels.

The package is fully functional without the extension: vbplab.kernels falls
back to the pure-Python twin at import time if vbplab._exactcore is missing.
"""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


def _extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("warning: Cython not available, skipping vbplab._exactcore", file=sys.stderr)
        return []
    return cythonize(
        [
            Extension(
                "vbplab._exactcore",
                ["src/vbplab/_exactcore.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )


class OptionalBuildExt(build_ext):
    """Try to build the accelerator; on failure install pure-Python only."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # toolchain missing or broken
            print(f"warning: compiled kernels skipped ({exc})", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: building {ext.name} failed ({exc}); "
                  "vbplab will use the pure-Python kernels", file=sys.stderr)


setup(ext_modules=_extensions(), cmdclass={"build_ext": OptionalBuildExt})
