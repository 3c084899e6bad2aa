import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("ORTHORADIAL_PURE_PYTHON") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("orthoradial._kernels", ["src/orthoradial/_kernels.pyx"], extra_compile_args=["-O2"])],
            compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
        )

setup(ext_modules=ext_modules)
