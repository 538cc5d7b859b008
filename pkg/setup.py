"""Build script.  The compiled kernel is optional: if Cython or a C compiler
is unavailable the package installs pure, and the numpy fallback is used."""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/multisep/_packedops_cy.pyx",
        compiler_directives={"language_level": "3"},
    )
    for ext in ext_modules:
        ext.include_dirs.append(numpy.get_include())
except ImportError:
    pass

setup(ext_modules=ext_modules)
