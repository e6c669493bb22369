"""Numba switch.

Set ``PERMCOUNT_DISABLE_JIT=1`` to force the pure-numpy kernels, e.g. for
debugging or on platforms without numba.
"""

import os

_DISABLED = os.environ.get("PERMCOUNT_DISABLE_JIT", "").strip().lower() in ("1", "true", "yes")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def decorate(func):
            return func

        return decorate


__all__ = ["njit", "HAVE_NUMBA"]
