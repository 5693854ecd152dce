"""Backend selection for the elimination kernels.

The compiled Cython engine is preferred when present; LIEINV_PURE=1
forces the pure-Python twin (used by tests and the benchmark to compare
the two).  Both expose the same functions with identical semantics.
"""

import os

if os.environ.get("LIEINV_PURE") == "1":
    from . import _engine_py as impl
else:
    try:
        from . import _speedups as impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _engine_py as impl

echelon = impl.echelon
poly_mul = impl.poly_mul
trim_flat = impl.trim_flat
strip_int_content = impl.strip_int_content
BACKEND = impl.BACKEND


def backend_name():
    return BACKEND
