"""Build script: compiles the optional term-arithmetic kernel.

The package is fully functional without the extension; torsal._kernel
falls back to the pure-Python twin when the compiled module is absent.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "torsal._kernel._speedups",
                ["src/torsal/_kernel/_speedups.pyx"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
