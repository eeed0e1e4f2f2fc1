"""Optional numba acceleration for the sequential per-pixel kernels.

The flood and labeling kernels are written in numba-compatible Python
(flat arrays, explicit loops). Without numba they still run correctly
under CPython, just much slower on large images.
"""

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(func):
            return func

        return wrap
