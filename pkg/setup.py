"""Build the optional Cython kernels; the package works without them."""
import numpy
from setuptools import setup

try:
    from Cython.Build import cythonize
except ImportError:  # fall back to the pure-numpy kernels
    ext_modules = []
else:
    ext_modules = cythonize(
        "src/norlund/_ckernels.pyx",
        compiler_directives={"language_level": "3"},
    )
    for ext in ext_modules:
        ext.include_dirs.append(numpy.get_include())
        ext.define_macros.append(("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION"))

setup(ext_modules=ext_modules)
