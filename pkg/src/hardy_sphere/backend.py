"""Kernel backend selection.

The compiled Cython extension is preferred; the numpy fallback is used when
the extension is missing or when HARDY_SPHERE_PURE_PYTHON=1 is set.
"""

from __future__ import annotations

import os

if os.environ.get("HARDY_SPHERE_PURE_PYTHON", "") == "1":
    from . import _kernels_py as kernels

    COMPILED = False
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]

        COMPILED = True
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]

        COMPILED = False

BACKEND = "compiled" if COMPILED else "python"

gegenbauer_eval = kernels.gegenbauer_eval
gegenbauer_table = kernels.gegenbauer_table
sturm_count = kernels.sturm_count
tridiag_min_eig = kernels.tridiag_min_eig
factor_sq_excess = kernels.factor_sq_excess


def worker_count() -> int:
    """Worker-pool size for row-parallel table computations.

    HARDY_SPHERE_THREADS caps it; defaults to a small pool.
    """
    env = os.environ.get("HARDY_SPHERE_THREADS", "")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return min(4, os.cpu_count() or 1)
