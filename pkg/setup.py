"""Build script: compiles the optional Cython kernel extension.

The package is fully functional without the extension; swr._kernels
falls back to the NumPy implementation when the compiled module is
missing, so the extension is marked optional.
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
                "swr._kernels._speed",
                ["src/swr/_kernels/_speed.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
