import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("TLSEP_NO_EXT", "") in ("", "0"):
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:  # no build tools; the pure-Python kernels are used
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "tlsep._kernels",
                    ["src/tlsep/_kernels.pyx"],
                    include_dirs=[numpy.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
