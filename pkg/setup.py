"""Build hook for the optional compiled scan kernel.

The package is fully functional without the extension (a numpy fallback is
selected at import); when Cython and a C compiler are present the compiled
kernel is built and picked up automatically.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "ffdioph.kernel._scan_cy",
                ["src/ffdioph/kernel/_scan_cy.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
