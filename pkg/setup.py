"""Build the optional Cython kernels; the package still installs without them."""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install, numpy fallback is used at import
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "starroots._kernels._ckernels",
                ["src/starroots/_kernels/_ckernels.pyx"],
                extra_compile_args=["-O3", "-fcx-limited-range"],
                optional=True,
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)
