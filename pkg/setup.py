"""Build hook for the optional compiled blade kernels.

The package works without the extension (a numpy fallback is selected at
import time), so a missing compiler or Cython must not fail the install.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "tetrax._kernels._blades_cy",
                ["src/tetrax/_kernels/_blades_cy.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - depends on build environment
    print(f"tetrax: skipping compiled kernels ({exc!r}); numpy fallback will be used")

setup(ext_modules=ext_modules)
