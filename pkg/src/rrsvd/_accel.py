"""Optional numba acceleration.

Set ``RRSVD_DISABLE_NUMBA=1`` to force the pure-numpy kernels even when numba
is importable. The choice is made once, at import time.
"""
from __future__ import annotations

import os

_FLAG = "RRSVD_DISABLE_NUMBA"


def _disabled_by_env() -> bool:
    return os.environ.get(_FLAG, "").strip().lower() not in ("", "0", "false", "no")


try:
    if _disabled_by_env():
        raise ImportError
    import numba as _numba
except ImportError:  # numba missing or switched off
    _numba = None

NUMBA_ENABLED: bool = _numba is not None


def njit(func):
    """``numba.njit(cache=True)`` when enabled, otherwise None."""
    if _numba is None:
        return None
    return _numba.njit(cache=True, fastmath=False)(func)


def backend_name() -> str:
    return "numba" if NUMBA_ENABLED else "numpy"
