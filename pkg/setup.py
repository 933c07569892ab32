"""Build script: compiles the optional fast-kernel extension when Cython is present."""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "unruhcap._fast",
                ["src/unruhcap/_fast.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level="3",
    )
except ImportError:
    # Pure-Python install: unruhcap.kernels falls back to the numpy backend.
    ext_modules = []

setup(ext_modules=ext_modules)
