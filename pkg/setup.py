"""Build script: compiles the recurrence/Sturm kernels when Cython and a C
compiler are available, otherwise installs pure-Python only (the package
selects the numpy fallback at import)."""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    ext_modules = cythonize(
        [
            Extension(
                "hardy_sphere._kernels",
                ["src/hardy_sphere/_kernels.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"hardy-sphere: building without compiled kernels ({exc})")

setup(ext_modules=ext_modules)
