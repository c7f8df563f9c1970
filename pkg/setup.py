from setuptools import Extension, setup

try:
    import numpy as np
    from Cython.Build import cythonize
except ImportError:
    # The compiled kernel is optional; qborn falls back to the pure-Python
    # twin when the extension is missing.
    extensions = []
else:
    extensions = cythonize(
        [
            Extension(
                "qborn.kernels._jacobi",
                ["src/qborn/kernels/_jacobi.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ]
    )

setup(ext_modules=extensions)
