"""Interleaved rank+select index over 2048-bit blocks (cs-poppy layout).

The vector is carved into 2^32-bit superblocks, 2048-bit blocks, and
512-bit basic blocks.  Per 2048-bit block one 64-bit entry interleaves
both counter levels so a single cache load serves both:

* bytes [0, 4): ones before the block within its superblock (uint32,
  readable with a direct 32-bit load, no shift),
* bytes [4, 8): popcounts of the block's first three basic blocks,
  10 bits each (the fourth is derivable from the next entry).

The superblock array stores ones before each superblock from the start of
the vector; it is always present, a single zero for small vectors.  Select
descends the same counters, helped by the sampled position of every
8192-th one (and/or zero).  Everything is immutable after construction and
safe for unbounded concurrent readers.
"""

import numpy as np

from . import _backend, _build
from ._layout import POPPY_L0_BITS, POPPY_L1_BITS

_SAMPLE_CFGS = ("ones", "zeros", "both")
_EMPTY = np.zeros(0, dtype=np.uint64)


class PoppyIndex:
    """Rank and select over a static BitVector, ~3.2% space overhead."""

    __slots__ = ("_bv", "_n", "_l0", "_l12", "_samples1", "_samples0", "_total1")

    supports_select_strategies = False

    def __init__(self, bv, samples="ones"):
        want1, want0 = _build.samples_config(samples, _SAMPLE_CFGS)
        self._bv = bv
        self._n = len(bv)

        bc = _build.basic_block_counts(bv)
        cum = _build.cumulative(bc)
        self._total1 = int(cum[-1])

        n_l0 = max(1, -(-self._n // POPPY_L0_BITS))
        self._l0 = cum[np.arange(n_l0, dtype=np.int64) << 23].astype(np.uint64)

        rows = _build.pad_rows(bc, 4)
        n_l1 = len(rows)
        l1_rel = cum[np.arange(n_l1, dtype=np.int64) * 4] - self._l0[np.arange(n_l1) >> 21]
        fields = rows[:, 0] | (rows[:, 1] << np.uint64(10)) | (rows[:, 2] << np.uint64(20))
        self._l12 = (l1_rel | (fields << np.uint64(32))).astype(np.uint64)

        self._samples1 = _build.build_samples(bv, cum, 1) if want1 else _EMPTY
        self._samples0 = _build.build_samples(bv, cum, 0) if want0 else _EMPTY

    # -- queries ----------------------------------------------------------
    @property
    def total_ones(self):
        return self._total1

    @property
    def total_zeros(self):
        return self._n - self._total1

    def rank1(self, i):
        """Ones in positions [0, i)."""
        self._check_rank_pos(i)
        return _backend.kernels.poppy_rank1(
            self._l0, self._l12, self._bv.words, self._n, self._total1, i
        )

    def rank0(self, i):
        self._check_rank_pos(i)
        return i - self.rank1(i)

    def rank(self, alpha, i):
        return self.rank1(i) if alpha else self.rank0(i)

    def select(self, alpha, j):
        """Position of the j-th alpha bit (j is 1-based)."""
        self._check_select_rank(alpha, j)
        return _backend.kernels.poppy_select(
            self._l0, self._l12, self._samples_for(alpha), self._bv.words, self._n, alpha, j
        )

    def select1(self, j):
        return self.select(1, j)

    def select0(self, j):
        return self.select(0, j)

    def rank1_batch(self, positions):
        queries = self._rank_queries(positions)
        out = np.zeros(len(queries), dtype=np.uint64)
        _backend.kernels.poppy_rank1_batch(
            self._l0, self._l12, self._bv.words, self._n, self._total1, queries, out
        )
        return out

    def rank0_batch(self, positions):
        queries = self._rank_queries(positions)
        return queries.astype(np.uint64) - self.rank1_batch(queries)

    def select_batch(self, alpha, ranks):
        queries = self._select_queries(alpha, ranks)
        out = np.zeros(len(queries), dtype=np.uint64)
        _backend.kernels.poppy_select_batch(
            self._l0, self._l12, self._samples_for(alpha), self._bv.words, self._n, alpha, queries, out
        )
        return out

    # -- space accounting ---------------------------------------------------
    def space_bytes(self):
        """Exact heap footprint of the index arrays, excluding the vector."""
        return sum(self.space_breakdown().values())

    def space_breakdown(self):
        return {
            "l0": self._l0.nbytes,
            "l12": self._l12.nbytes,
            "samples": self._samples1.nbytes + self._samples0.nbytes,
        }

    # -- helpers ------------------------------------------------------------
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
        return f"PoppyIndex(n={self._n}, ones={self._total1})"
