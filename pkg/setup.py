from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "staralg._core",
                ["src/staralg/_core.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # no Cython or the .pyx failed to translate
    print(f"staralg: building without the compiled kernel ({exc})")

setup(ext_modules=ext_modules)
