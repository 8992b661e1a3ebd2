"""Numerical kernel backends.

Two interchangeable implementations of the hot loops exist: a compiled
Cython extension (_fast) and a pure-Python module (_ref). They are written
to produce bit-identical results. The active backend is picked at import
time; set DLSRR_KERNEL=ref to force the pure-Python one, DLSRR_KERNEL=fast
to require the compiled one (raises if it is not built).
"""
import os

from dlsrr._kernels import common

_choice = os.environ.get("DLSRR_KERNEL", "").strip().lower()

if _choice == "ref":
    from dlsrr._kernels import _ref as backend
elif _choice == "fast":
    from dlsrr._kernels import _fast as backend
elif _choice == "":
    try:
        from dlsrr._kernels import _fast as backend
    except ImportError:
        from dlsrr._kernels import _ref as backend
else:
    raise ImportError(
        f"DLSRR_KERNEL={_choice!r} not understood; use 'fast', 'ref', or leave it unset"
    )

backend_name = backend.BACKEND_NAME


def load_backend(name):
    """Import a backend by name ('fast' or 'ref') regardless of the default."""
    if name == "ref":
        from dlsrr._kernels import _ref
        return _ref
    if name == "fast":
        from dlsrr._kernels import _fast
        return _fast
    raise ValueError(f"unknown kernel backend {name!r}")
