"""Kernel compilation switch.

Hot loops are written once in a numba-compatible subset of Python. When
``CHORDCYCLE_NO_NUMBA`` is set to a non-empty value other than ``0`` the
decorator below is the identity and the same code runs as plain Python on
numpy arrays (slow, but handy for debugging and for benchmarking the JIT).
"""

import logging
import os

import numpy as np

logger = logging.getLogger(__name__)

NUMBA_ENABLED = os.environ.get("CHORDCYCLE_NO_NUMBA", "") in ("", "0")

if NUMBA_ENABLED:
    try:
        import numba
    except ImportError:  # pragma: no cover
        logger.warning("numba not importable, falling back to pure Python kernels")
        NUMBA_ENABLED = False


def njit(*args, **kwargs):
    """``numba.njit`` when enabled, otherwise a no-op decorator."""
    if NUMBA_ENABLED:
        kwargs.setdefault("cache", True)
        return numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]

    def wrap(func):
        return func

    return wrap


ZERO = np.uint64(0)
ONE = np.uint64(1)
ALL = np.uint64(0xFFFFFFFFFFFFFFFF)
_M32 = np.uint64(0xFFFFFFFF)
_M16 = np.uint64(0xFFFF)
_M8 = np.uint64(0xFF)
_M4 = np.uint64(0xF)
_M2 = np.uint64(0x3)
_S32 = np.uint64(32)
_S16 = np.uint64(16)
_S8 = np.uint64(8)
_S4 = np.uint64(4)
_S2 = np.uint64(2)


@njit
def popcount(x):
    c = 0
    while x != ZERO:
        x &= x - ONE
        c += 1
    return c


@njit
def lowbit(x):
    """Index of the least significant set bit of a non-zero word."""
    i = 0
    if (x & _M32) == ZERO:
        x >>= _S32
        i += 32
    if (x & _M16) == ZERO:
        x >>= _S16
        i += 16
    if (x & _M8) == ZERO:
        x >>= _S8
        i += 8
    if (x & _M4) == ZERO:
        x >>= _S4
        i += 4
    if (x & _M2) == ZERO:
        x >>= _S2
        i += 2
    if (x & ONE) == ZERO:
        i += 1
    return i


@njit
def bit(i):
    return ONE << np.uint64(i)


def to_words(masks, n):
    """Pack Python-int bitsets into an ``(len(masks), ceil(n/64))`` uint64 array."""
    w = max(1, (n + 63) // 64)
    out = np.zeros((len(masks), w), dtype=np.uint64)
    for r, m in enumerate(masks):
        for j in range(w):
            out[r, j] = (m >> (64 * j)) & 0xFFFFFFFFFFFFFFFF
    return out
