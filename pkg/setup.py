from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension(
        "fusionseq._kernels._native",
        ["src/fusionseq/_kernels/_native.pyx"],
    )
]

setup(ext_modules=cythonize(extensions, language_level=3))
