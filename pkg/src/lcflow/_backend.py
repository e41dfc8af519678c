"""Numba/numpy backend selection for the hot kernels.

The accelerated kernels are compiled with numba's @njit when available.
Setting the environment variable ``LCFLOW_NUMBA=0`` (checked once at import)
forces the pure-numpy fallback path; so does a missing numba installation.
Both paths compute the same panel sums in the same order, so results agree
to the last few ulps (tolerance checks pass on either backend).
"""

import os

_flag = os.environ.get("LCFLOW_NUMBA", "1").strip().lower()
_want_numba = _flag not in ("0", "false", "no", "off")

try:
    if not _want_numba:
        raise ImportError("numba disabled via LCFLOW_NUMBA")
    from numba import njit as _numba_njit

    HAVE_NUMBA = True

    def njit(*args, **kwargs):
        kwargs.setdefault("cache", True)
        kwargs.setdefault("nogil", True)
        return _numba_njit(*args, **kwargs)

except ImportError:
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        # identity decorator: the decorated function runs as plain Python
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def wrap(func):
            return func

        return wrap


USING_NUMBA = HAVE_NUMBA

def backend_name():
    return "numba" if USING_NUMBA else "numpy"
