"""Build script: compiles the optional integrator extension.

The package is pure Python plus one optional Cython extension holding the
adaptive Runge-Kutta hot loop (geophase._core).  If Cython or a C compiler
is unavailable the build falls back to the pure-Python twin in
geophase._pycore; set GEOPHASE_NO_EXTENSION=1 to skip the compile step
explicitly.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Never fail the install because the extension would not compile."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - toolchain dependent
            print(f"warning: skipping geophase._core extension build: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover - toolchain dependent
            print(f"warning: could not compile {ext.name}: {exc}")


ext_modules = []
cmdclass = {}
if os.environ.get("GEOPHASE_NO_EXTENSION") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "geophase._core",
                    ["src/geophase/_core.pyx"],
                    extra_compile_args=["-O3", "-fcx-limited-range"],
                )
            ],
            language_level=3,
        )
        cmdclass["build_ext"] = optional_build_ext
    except ImportError:  # pragma: no cover - toolchain dependent
        print("warning: Cython not available, using pure-Python integrator")

setup(ext_modules=ext_modules, cmdclass=cmdclass)
