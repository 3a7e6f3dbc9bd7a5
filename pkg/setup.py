"""Build script for the optional compiled kernel extension.

The package is fully functional without the extension; the pure-Python
kernels are selected automatically at import when the compiled module is
missing.  Any failure while cythonizing or compiling therefore downgrades
to a warning instead of aborting the install.
"""

import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """build_ext that tolerates a missing or broken C toolchain."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001 - degrade to pure Python
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            f"WARNING: compiled kernels skipped ({exc!r}); "
            "falling back to the pure-Python backend",
            file=sys.stderr,
        )


ext_modules = []
if os.environ.get("TORICSTAB_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "toricstab.kernels._ext",
                    ["src/toricstab/kernels/_ext.pyx"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
