from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "parashake._keccak_cy",
                ["src/parashake/_keccak_cy.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # Pure-Python fallback is selected at import time when the compiled
    # kernel is unavailable, so building without Cython is still useful.
    extensions = []

setup(ext_modules=extensions)
