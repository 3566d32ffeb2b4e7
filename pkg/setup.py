from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("salvetti._ckernels", ["src/salvetti/_ckernels.pyx"], extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )
    # the package still works without the compiled core
    for ext in ext_modules:
        ext.optional = True

setup(ext_modules=ext_modules)
