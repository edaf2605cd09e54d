"""Build hook for the optional compiled kernel.

The package is pure python plus one Cython extension; when Cython (or a C
compiler) is unavailable the install proceeds without it and the numpy
reference kernel is used at runtime.
"""

from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "omrouter.kernels._fast",
                ["src/omrouter/kernels/_fast.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
