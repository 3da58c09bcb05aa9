"""Numba shim: real ``@njit`` when usable, a no-op decorator otherwise.

Two environment variables control the hot kernels:

* ``CONCBOUND_NO_NUMBA`` — any value other than ``""``/``"0"``/``"false"``
  selects the pure-numpy fallback path even when numba is installed.
* ``CONCBOUND_THREADS`` — caps the numba thread pool (no effect on the
  fallback path).
"""
import logging
import os

logger = logging.getLogger(__name__)


def _env_flag(name):
    return os.environ.get(name, "").strip().lower() not in ("", "0", "false", "no")


NUMBA_DISABLED = _env_flag("CONCBOUND_NO_NUMBA")

try:
    if NUMBA_DISABLED:
        raise ImportError("numba disabled via CONCBOUND_NO_NUMBA")
    import numba
    from numba import njit

    USING_NUMBA = True
    _threads = os.environ.get("CONCBOUND_THREADS", "").strip()
    if _threads:
        numba.set_num_threads(max(1, int(_threads)))
except ImportError:
    USING_NUMBA = False
    if not NUMBA_DISABLED:
        logger.warning("numba not available; falling back to pure-numpy kernels")

    def njit(*args, **kwargs):
        """No-op replacement for numba.njit."""
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def wrap(func):
            return func

        return wrap
