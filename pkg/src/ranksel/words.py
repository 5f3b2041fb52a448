"""Bit-parallel primitives on single 64-bit words.

In-word select is the terminal step of every select query, so it gets its
own tiny module.  The compiled backend answers it with broadword
arithmetic (plus an optional bit-deposit instruction path picked at
runtime when the CPU supports it); the pure backend walks bytes through a
lookup table.  Both are oracle-tested.
"""

from . import _backend

_M64 = (1 << 64) - 1


def popcount_word(w):
    """Number of set bits in the 64-bit word w."""
    _check_word(w)
    return _backend.kernels.popcount_word(w)


def select_in_word(w, j):
    """Position (LSB = 0) of the j-th set bit of w, j in [1, popcount(w)]."""
    _check_word(w)
    if not 1 <= j <= int(w).bit_count():
        raise ValueError("j out of range for word popcount")
    return _backend.kernels.select_in_word(w, j)


def select0_in_word(w, j):
    """Position of the j-th zero bit of w: select_in_word(~w, j)."""
    _check_word(w)
    if not 1 <= j <= 64 - int(w).bit_count():
        raise ValueError("j out of range for word zero count")
    return _backend.kernels.select0_in_word(w, j)


def select_paths():
    """Names of the in-word select implementations the active backend has."""
    paths = ["portable"]
    if getattr(_backend.kernels, "HAS_PDEP", False):
        paths.append("pdep")
    return tuple(paths)


def set_select_path(name):
    """Force an in-word select path ("auto", "portable", or "pdep")."""
    _backend.kernels.set_select_path(name)


def _check_word(w):
    if not 0 <= int(w) <= _M64:
        raise ValueError("word out of 64-bit range")
