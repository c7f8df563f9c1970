"""Backend selection for the Jacobi eigensolver kernel.

The compiled extension is preferred; the pure-Python twin is used when it is
missing or when ``QBORN_FORCE_PYTHON`` is set in the environment.
"""

import os

if os.environ.get("QBORN_FORCE_PYTHON"):
    from qborn.kernels._jacobi_py import jacobi_eigh

    BACKEND = "python"
else:
    try:
        from qborn.kernels._jacobi import jacobi_eigh  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        from qborn.kernels._jacobi_py import jacobi_eigh  # type: ignore[no-redef]

        BACKEND = "python"

__all__ = ["jacobi_eigh", "BACKEND"]
