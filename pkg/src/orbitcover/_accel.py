"""Numba dispatch.

Set ``ORBITCOVER_DISABLE_NUMBA=1`` to force the numpy/Python code paths.
Numba is optional; without it the fallbacks are used automatically.
"""

import os

_DISABLED = os.environ.get("ORBITCOVER_DISABLE_NUMBA", "").strip().lower() in (
    "1",
    "true",
    "yes",
    "on",
)

try:  # pragma: no cover - depends on the environment
    if _DISABLED:
        raise ImportError("numba disabled by ORBITCOVER_DISABLE_NUMBA")
    from numba import njit as _njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover
    _njit = None
    NUMBA_AVAILABLE = False


def njit(func):
    """Compile ``func`` with numba when available, else return ``None``.

    Callers keep the pure version and pick whichever is not ``None``.
    """
    if _njit is None:
        return None
    return _njit(cache=True, nogil=True)(func)
