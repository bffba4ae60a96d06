"""Build script.

The time-stepping kernel has an optional compiled (Cython) implementation.
If Cython or a C compiler is unavailable, the build silently falls back to
the pure-Python kernel; the package is fully functional either way.
"""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build extensions, but degrade to the pure-Python kernel on failure."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler / toolchain
            warnings.warn(f"compiled kernel skipped: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"compiled kernel '{ext.name}' skipped: {exc}")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [Extension("radialheat._kernel", ["src/radialheat/_kernel.pyx"])],
        language_level=3,
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
