"""Numba acceleration layer with a pure-numpy fallback.

The hot numeric kernels in this package (dense symmetric eigensolver,
complex linear solves over sweep grids, the stable log-cosh special
function) exist in two flavors: a loop-oriented version compiled with
numba's ``@njit`` and a vectorized numpy version.  Which one runs is
decided once at import time:

* ``QCAPSIM_NO_NUMBA=1`` in the environment forces the numpy path;
* if numba is not importable the numpy path is used automatically;
* otherwise the numba path is used (with on-disk caching of the
  compiled kernels).

``benchmarks/bench_kernels.py`` times both paths side by side.
"""

from __future__ import annotations

import os


def _env_disabled() -> bool:
    value = os.environ.get("QCAPSIM_NO_NUMBA", "").strip().lower()
    return value not in ("", "0", "false", "no")


try:
    from numba import njit as _numba_njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via QCAPSIM_NO_NUMBA instead
    _numba_njit = None
    HAVE_NUMBA = False

NUMBA_DISABLED = _env_disabled()
USE_NUMBA = HAVE_NUMBA and not NUMBA_DISABLED


def njit_or_plain(func):
    """Compile ``func`` with numba when the numba path is active.

    Returns the function unchanged otherwise, so the decorated code must be
    valid plain Python over numpy arrays.
    """
    if USE_NUMBA:
        return _numba_njit(cache=True)(func)
    return func
