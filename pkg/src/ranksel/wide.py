"""Rank-optimized two-level index over 65536-bit blocks.

Per 65536-bit block: one 64-bit counter (ones before the block, from the
start of the vector - blocks this large need no third level) and 127
16-bit cumulative counters, l2[127b + k - 1] = ones in block b before its
k-th 512-bit basic block.  Counters are kept in two separate arrays: with
128 basic blocks per block there is nothing to gain from interleaving.

Rank reads one counter from each array plus a final popcount.  The
counters alone cost 2096 bits per 65536-bit block, 3.198% of the vector.
Select is supported for completeness (sample jump, block scan, then a
search over the 127 cumulative counters with the same three strategy
choices as the flat index), but searching that many counters per query is
the known weak spot of this layout - use the flat index when select
matters.
"""

import struct

import numpy as np

from . import _backend, _build, _pure
from ._layout import WIDE_L1_BITS
from .flat import SearchStrategy

_SAMPLE_CFGS = ("ones", "zeros", "both", "none")
_EMPTY = np.zeros(0, dtype=np.uint64)

_MAGIC = b"RSIX"
_FORMAT_VERSION = 1
_KIND_WIDE = 3


def search_l2_linear(counts, r):
    """Basic block containing the r-th target bit: |{k in 1..127 : c_k < r}|."""
    return _pure.search127_linear(counts, r)


def search_l2_binary(counts, r):
    """Same result with a fixed seven-level comparison schedule."""
    return _pure.search127_binary(counts, r)


def search_l2_parallel(counts, r):
    """Same result via compare-all-lanes semantics (16-bit lanes, no widening)."""
    return _pure.search127_parallel(counts, r)


class WideIndex:
    """Fast rank over a static BitVector; counters cost 3.198% of n."""

    __slots__ = ("_bv", "_n", "_l1", "_l2", "_samples1", "_samples0", "_total1", "default_strategy")

    supports_select_strategies = True

    def __init__(self, bv, samples="none", default_strategy=SearchStrategy.PARALLEL_COMPARE):
        want1, want0 = _build.samples_config(samples, _SAMPLE_CFGS)
        self._bv = bv
        self._n = len(bv)
        self.default_strategy = SearchStrategy.parse(default_strategy)

        bc = _build.basic_block_counts(bv)
        cum = _build.cumulative(bc)
        self._total1 = int(cum[-1])

        rows = _build.pad_rows(bc, 128)
        n_l1 = len(rows)
        self._l1 = cum[np.arange(n_l1, dtype=np.int64) * 128].astype(np.uint64)
        self._l2 = np.cumsum(rows, axis=1, dtype=np.uint64)[:, :127].astype(np.uint16).ravel()

        self._samples1 = _build.build_samples(bv, cum, 1) if want1 else _EMPTY
        self._samples0 = _build.build_samples(bv, cum, 0) if want0 else _EMPTY

    # -- queries ------------------------------------------------------------
    @property
    def total_ones(self):
        return self._total1

    @property
    def total_zeros(self):
        return self._n - self._total1

    def rank1(self, i):
        """Ones in positions [0, i); reads one counter per level."""
        self._check_rank_pos(i)
        return _backend.kernels.wide_rank1(
            self._l1, self._l2, self._bv.words, self._n, self._total1, i
        )

    def rank0(self, i):
        self._check_rank_pos(i)
        return i - self.rank1(i)

    def rank(self, alpha, i):
        return self.rank1(i) if alpha else self.rank0(i)

    def select(self, alpha, j, strategy=None):
        """Position of the j-th alpha bit (j is 1-based)."""
        self._check_select_rank(alpha, j)
        strategy = self.default_strategy if strategy is None else SearchStrategy.parse(strategy)
        return _backend.kernels.wide_select(
            self._l1, self._l2, self._samples_for(alpha), self._bv.words,
            self._n, alpha, j, int(strategy),
        )

    def select1(self, j, strategy=None):
        return self.select(1, j, strategy)

    def select0(self, j, strategy=None):
        return self.select(0, j, strategy)

    def rank1_batch(self, positions):
        queries = self._rank_queries(positions)
        out = np.zeros(len(queries), dtype=np.uint64)
        _backend.kernels.wide_rank1_batch(
            self._l1, self._l2, self._bv.words, self._n, self._total1, queries, out
        )
        return out

    def rank0_batch(self, positions):
        queries = self._rank_queries(positions)
        return queries.astype(np.uint64) - self.rank1_batch(queries)

    def select_batch(self, alpha, ranks, strategy=None):
        queries = self._select_queries(alpha, ranks)
        strategy = self.default_strategy if strategy is None else SearchStrategy.parse(strategy)
        out = np.zeros(len(queries), dtype=np.uint64)
        _backend.kernels.wide_select_batch(
            self._l1, self._l2, self._samples_for(alpha), self._bv.words,
            self._n, alpha, queries, out, int(strategy),
        )
        return out

    # -- space accounting -----------------------------------------------------
    def space_bytes(self):
        """Exact heap footprint of the index arrays, excluding the vector."""
        return sum(self.space_breakdown().values())

    def space_breakdown(self):
        return {
            "l1": self._l1.nbytes,
            "l2": self._l2.nbytes,
            "samples": self._samples1.nbytes + self._samples0.nbytes,
        }

    # -- binary dump for workload replay --------------------------------------
    def save(self, file):
        if not hasattr(file, "write"):
            with open(file, "wb") as f:
                self.save(f)
            return
        flags = (2 if len(self._samples1) else 0) | (4 if len(self._samples0) else 0)
        file.write(_MAGIC)
        file.write(struct.pack("<HBB", _FORMAT_VERSION, _KIND_WIDE, flags))
        file.write(struct.pack("<QQ", self._n, self._total1))
        file.write(struct.pack("<Q", len(self._l1)))
        file.write(self._l1.astype("<u8", copy=False).tobytes())
        file.write(struct.pack("<Q", len(self._l2)))
        file.write(self._l2.astype("<u2", copy=False).tobytes())
        for arr in (self._samples1, self._samples0):
            file.write(struct.pack("<Q", len(arr)))
            file.write(arr.astype("<u8", copy=False).tobytes())

    @classmethod
    def load(cls, file, bv):
        if not hasattr(file, "read"):
            with open(file, "rb") as f:
                return cls.load(f, bv)
        magic = file.read(4)
        if magic != _MAGIC:
            raise ValueError("not an index dump")
        version, kind, flags = struct.unpack("<HBB", file.read(4))
        if version != _FORMAT_VERSION:
            raise ValueError(f"unsupported index dump version {version}")
        if kind != _KIND_WIDE:
            raise ValueError("index dump holds a different structure kind")
        n, total1 = struct.unpack("<QQ", file.read(16))
        if n != len(bv):
            raise ValueError("index dump does not match the vector length")

        def read_array(dtype, item_size):
            (count,) = struct.unpack("<Q", file.read(8))
            raw = file.read(item_size * count)
            if len(raw) != item_size * count:
                raise ValueError("truncated index dump")
            return np.frombuffer(raw, dtype=dtype)

        idx = cls.__new__(cls)
        idx._bv = bv
        idx._n = n
        idx._total1 = total1
        idx._l1 = read_array("<u8", 8).astype(np.uint64)
        idx._l2 = read_array("<u2", 2).astype(np.uint16)
        idx._samples1 = read_array("<u8", 8).astype(np.uint64)
        idx._samples0 = read_array("<u8", 8).astype(np.uint64)
        idx.default_strategy = SearchStrategy.PARALLEL_COMPARE
        return idx

    # -- helpers ---------------------------------------------------------------
    def _samples_for(self, alpha):
        return self._samples1 if alpha else self._samples0

    def _check_rank_pos(self, i):
        if not 0 <= i <= self._n:
            raise ValueError("rank position out of range")

    def _check_select_rank(self, alpha, j):
        if alpha not in (0, 1):
            raise ValueError("alpha must be 0 or 1")
        total = self._total1 if alpha else self._n - self._total1
        if not 1 <= j <= total:
            raise ValueError("rank does not exist")

    def _rank_queries(self, positions):
        queries = np.ascontiguousarray(positions, dtype=np.int64)
        if len(queries) and (queries.min() < 0 or queries.max() > self._n):
            raise ValueError("rank position out of range")
        return queries

    def _select_queries(self, alpha, ranks):
        if alpha not in (0, 1):
            raise ValueError("alpha must be 0 or 1")
        queries = np.ascontiguousarray(ranks, dtype=np.int64)
        total = self._total1 if alpha else self._n - self._total1
        if len(queries) and (queries.min() < 1 or queries.max() > total):
            raise ValueError("rank does not exist")
        return queries

    def __repr__(self):
        return f"WideIndex(n={self._n}, ones={self._total1})"
