"""Succinct rank and select indexes for static bit vectors.

Three index layouts over one :class:`BitVector`, all built from 512-bit
basic-block popcounts in a single pass:

* :class:`PoppyIndex` - interleaved 64-bit entries per 2048-bit block,
* :class:`FlatIndex` - interleaved 128-bit entries per 4096-bit block with
  random-access cumulative counters and three select search strategies,
* :class:`WideIndex` - non-interleaved 16-bit cumulative counters per
  65536-bit block, tuned for rank.

Queries run on a compiled kernel extension when available and on a
pure-Python twin otherwise; see :mod:`ranksel._backend`.
"""

from . import _backend
from .bitvector import BitVector
from .flat import FlatIndex, SearchStrategy
from .oracle import naive_rank, naive_select
from .poppy import PoppyIndex
from .wide import WideIndex
from .words import popcount_word, select0_in_word, select_in_word

__version__ = "0.1.0"

backend_name = _backend.name
available_backends = _backend.available

__all__ = [
    "BitVector",
    "FlatIndex",
    "PoppyIndex",
    "SearchStrategy",
    "WideIndex",
    "available_backends",
    "backend_name",
    "naive_rank",
    "naive_select",
    "popcount_word",
    "select0_in_word",
    "select_in_word",
]
