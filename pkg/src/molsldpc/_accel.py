"""JIT switch for the hot kernels.

Kernels are written in the numba-compatible subset of numpy. When numba is
missing, or ``MOLS_DISABLE_JIT`` is set to a truthy value, :func:`njit`
returns the plain Python function and callers that have a vectorised numpy
route (the BEC simulator) take it instead.
"""
import os

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

_flag = os.environ.get("MOLS_DISABLE_JIT", "").strip().lower()
JIT_DISABLED = _flag not in ("", "0", "false", "no", "off")
USE_JIT = numba is not None and not JIT_DISABLED


def njit(fn=None, **options):
    options.setdefault("cache", True)

    def wrap(f):
        if not USE_JIT:
            f.py_func = f
            return f
        return numba.njit(**options)(f)

    if fn is not None:
        return wrap(fn)
    return wrap


def backend_name():
    return "numba" if USE_JIT else "numpy"
