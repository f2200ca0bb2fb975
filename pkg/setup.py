from setuptools import Extension, setup

# The compiled quadrature kernel is optional: the package falls back to the
# pure-numpy implementation in rydeit._ddicore_py when it cannot be built.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "rydeit._ddicore",
                ["src/rydeit/_ddicore.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
