from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "invop._kernels._native",
                ["src/invop/_kernels/_native.pyx"],
                # -ffp-contract=off: backends must stay bitwise identical,
                # so the compiler may not fuse multiply-add sequences.
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # No Cython: the package still works on the pure-Python kernels.
    extensions = []

setup(ext_modules=extensions)
