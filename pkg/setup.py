from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("dezagraphs._kernels._core", ["src/dezagraphs/_kernels/_core.pyx"], optional=True)],
        compiler_directives={"language_level": 3, "embedsignature": True},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
