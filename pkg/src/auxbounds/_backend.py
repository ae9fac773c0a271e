"""Backend selection for the hot numeric kernels.

Two interchangeable backends exist for every kernel in ``_kernels``:

* ``numba``: loop kernels compiled with ``numba.njit`` (the default when
  numba is importable),
* ``numpy``: pure numpy / Python fallbacks with identical semantics.

The choice is made once at import time from the ``AUXBOUNDS_BACKEND``
environment variable (``numba``, ``numpy``, or ``auto``).
"""

from __future__ import annotations

import os

_ENV_VAR = "AUXBOUNDS_BACKEND"


def _resolve() -> str:
    requested = os.environ.get(_ENV_VAR, "auto").strip().lower() or "auto"
    if requested not in ("auto", "numba", "numpy"):
        raise ValueError(
            f"{_ENV_VAR} must be 'numba', 'numpy' or 'auto', got {requested!r}"
        )
    if requested == "numpy":
        return "numpy"
    try:
        import numba  # noqa: F401
    except ImportError:
        if requested == "numba":
            raise ImportError(
                f"{_ENV_VAR}=numba but numba is not installed; "
                "install the 'accel' extra or set AUXBOUNDS_BACKEND=numpy"
            ) from None
        return "numpy"
    return "numba"


BACKEND: str = _resolve()
USE_NUMBA: bool = BACKEND == "numba"

if USE_NUMBA:
    from numba import njit as _numba_njit

    def njit(func):
        return _numba_njit(cache=True)(func)

else:

    def njit(func):
        return func
