"""Rank+select index with 128-bit interleaved entries over 4096-bit blocks.

Each 4096-bit block owns one 128-bit entry (two adjacent 64-bit words):
bits [0, 44) store the ones before the block (within its 2^44-bit
superblock when the optional superblock array exists, else from the start
of the vector); bits [44 + 12(k-1), 44 + 12k) store c_k, the ones inside
the block before its k-th 512-bit basic block, for k = 1..7 (c_0 is an
implicit zero, the eighth basic block needs no counter).

Because the c_k are cumulative, rank reads exactly one of them - no
summation loop - and select can locate the target basic block with any of
three search strategies over the monotone c_1..c_7:

* ``LINEAR``: scan until a counter reaches the remaining rank,
* ``UNIFORM_BINARY``: a fixed decision tree, always three comparisons,
* ``PARALLEL_COMPARE``: widen the seven 12-bit fields to 16-bit lanes and
  compare all of them against the remaining rank at once (the default; on
  the compiled backend the compiler can turn this into SIMD lane ops).

Zero-side queries are derived from the same ones-counters (a counter over
an interval of known size also counts its zeros), so select0 and select1
both work from one counter set.  Indexes are immutable after construction
and safe for unbounded concurrent readers.
"""

import enum
import struct

import numpy as np

from . import _backend, _build, _pure
from ._layout import FLAT_L0_BITS, FLAT_L1_BITS

_SAMPLE_CFGS = ("ones", "zeros", "both", "none")
_EMPTY = np.zeros(0, dtype=np.uint64)
_L1_MASK = (1 << 44) - 1

_MAGIC = b"RSIX"
_FORMAT_VERSION = 1
_KIND_FLAT = 2


class SearchStrategy(enum.IntEnum):
    LINEAR = 0
    UNIFORM_BINARY = 1
    PARALLEL_COMPARE = 2

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        names = {"linear": cls.LINEAR, "binary": cls.UNIFORM_BINARY, "parallel": cls.PARALLEL_COMPARE}
        try:
            return names[str(value).lower()]
        except KeyError:
            raise ValueError(
                f"unknown strategy {value!r} (expected one of {sorted(names)})"
            ) from None

    @property
    def short_name(self):
        return {self.LINEAR: "linear", self.UNIFORM_BINARY: "binary", self.PARALLEL_COMPARE: "parallel"}[self]


# -- packed-field helpers (module-level so they are testable in isolation) --

def pack_l2_fields(fields):
    """Pack seven 12-bit cumulative counts into one 84-bit integer."""
    if len(fields) != 7:
        raise ValueError("expected seven fields")
    packed = 0
    for k, f in enumerate(fields):
        if not 0 <= f < (1 << 12):
            raise ValueError("field does not fit in 12 bits")
        packed |= int(f) << (12 * k)
    return packed


def unpack_12_to_16(packed):
    """Widen seven packed 12-bit fields into seven 16-bit lanes."""
    return _pure.unpack_12_to_16(packed)


def search_l2_linear(counts, r):
    """Basic block containing the r-th target bit: |{k in 1..7 : c_k < r}|."""
    return _pure.search7_linear(counts, r)


def search_l2_binary(counts, r):
    """Same result as search_l2_linear, always exactly three comparisons."""
    return _pure.search7_binary(counts, r)


def search_l2_parallel(packed, r, zeros=False):
    """Same result via the widen-then-compare-all-lanes route."""
    return _pure.search7_parallel(packed, r, zeros=zeros)


class FlatIndex:
    """Rank and select over a static BitVector; counters cost 3.125% of n."""

    __slots__ = ("_bv", "_n", "_l0", "_ebuf", "_samples1", "_samples0", "_total1", "default_strategy")

    supports_select_strategies = True

    def __init__(self, bv, with_l0=False, samples="ones", default_strategy=SearchStrategy.PARALLEL_COMPARE):
        want1, want0 = _build.samples_config(samples, _SAMPLE_CFGS)
        if not with_l0 and len(bv) > FLAT_L0_BITS:
            raise ValueError("vector longer than 2^44 bits requires with_l0=True")
        self._bv = bv
        self._n = len(bv)
        self.default_strategy = SearchStrategy.parse(default_strategy)

        bc = _build.basic_block_counts(bv)
        cum = _build.cumulative(bc)
        self._total1 = int(cum[-1])

        if with_l0:
            n_l0 = -(-self._n // FLAT_L0_BITS)
            self._l0 = cum[np.arange(n_l0, dtype=np.int64) << 35].astype(np.uint64)
        else:
            self._l0 = _EMPTY

        rows = _build.pad_rows(bc, 8)
        n_l1 = len(rows)
        l1 = cum[np.arange(n_l1, dtype=np.int64) * 8]
        if with_l0:
            l1 = l1 - self._l0[np.arange(n_l1) >> 32]
        c = np.cumsum(rows, axis=1, dtype=np.uint64)  # c[:, k-1] == c_k
        lo = l1 | (c[:, 0] << np.uint64(44)) | (c[:, 1] << np.uint64(56))
        hi = (
            (c[:, 1] >> np.uint64(8))
            | (c[:, 2] << np.uint64(4))
            | (c[:, 3] << np.uint64(16))
            | (c[:, 4] << np.uint64(28))
            | (c[:, 5] << np.uint64(40))
            | (c[:, 6] << np.uint64(52))
        )
        self._ebuf = np.empty(2 * n_l1, dtype=np.uint64)
        self._ebuf[0::2] = lo
        self._ebuf[1::2] = hi

        self._samples1 = _build.build_samples(bv, cum, 1) if want1 else _EMPTY
        self._samples0 = _build.build_samples(bv, cum, 0) if want0 else _EMPTY

    # -- queries ------------------------------------------------------------
    @property
    def total_ones(self):
        return self._total1

    @property
    def total_zeros(self):
        return self._n - self._total1

    @property
    def has_l0(self):
        return len(self._l0) > 0

    def rank1(self, i):
        """Ones in positions [0, i); reads exactly one 128-bit entry."""
        self._check_rank_pos(i)
        return _backend.kernels.flat_rank1(
            self._l0, self._ebuf, self._bv.words, self._n, self._total1, i
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
        return _backend.kernels.flat_select(
            self._l0, self._ebuf, self._samples_for(alpha), self._bv.words,
            self._n, alpha, j, int(strategy),
        )

    def select1(self, j, strategy=None):
        return self.select(1, j, strategy)

    def select0(self, j, strategy=None):
        return self.select(0, j, strategy)

    def rank1_batch(self, positions):
        queries = self._rank_queries(positions)
        out = np.zeros(len(queries), dtype=np.uint64)
        _backend.kernels.flat_rank1_batch(
            self._l0, self._ebuf, self._bv.words, self._n, self._total1, queries, out
        )
        return out

    def rank0_batch(self, positions):
        queries = self._rank_queries(positions)
        return queries.astype(np.uint64) - self.rank1_batch(queries)

    def select_batch(self, alpha, ranks, strategy=None):
        queries = self._select_queries(alpha, ranks)
        strategy = self.default_strategy if strategy is None else SearchStrategy.parse(strategy)
        out = np.zeros(len(queries), dtype=np.uint64)
        _backend.kernels.flat_select_batch(
            self._l0, self._ebuf, self._samples_for(alpha), self._bv.words,
            self._n, alpha, queries, out, int(strategy),
        )
        return out

    def rank1_instrumented(self, i):
        """rank1 plus access counts: (value, entries_read, words_read).

        Verification hook for the random-access law: a rank touches exactly
        one 128-bit entry and at most 8 vector words.
        """
        self._check_rank_pos(i)
        if i == self._n:
            return self._total1, 0, 0
        b = i >> 12
        e = int(self._ebuf[2 * b]) | (int(self._ebuf[2 * b + 1]) << 64)
        entries_read = 1
        words_read = 0
        res = e & _L1_MASK
        if len(self._l0):
            res += int(self._l0[i >> 44])
        k = (i >> 9) & 7
        if k:
            res += (e >> (44 + 12 * (k - 1))) & 0xFFF
        words = self._bv.words
        w0 = (i >> 9) << 3
        wq = i >> 6
        for w in range(w0, wq):
            res += int(words[w]).bit_count()
            words_read += 1
        rem = i & 63
        if rem:
            res += (int(words[wq]) & ((1 << rem) - 1)).bit_count()
            words_read += 1
        return res, entries_read, words_read

    # -- space accounting -----------------------------------------------------
    def space_bytes(self):
        """Exact heap footprint of the index arrays, excluding the vector."""
        return sum(self.space_breakdown().values())

    def space_breakdown(self):
        return {
            "l0": self._l0.nbytes,
            "l12": self._ebuf.nbytes,
            "samples": self._samples1.nbytes + self._samples0.nbytes,
        }

    # -- binary dump for workload replay --------------------------------------
    def save(self, file):
        if not hasattr(file, "write"):
            with open(file, "wb") as f:
                self.save(f)
            return
        flags = (1 if len(self._l0) else 0) | (2 if len(self._samples1) else 0) | (
            4 if len(self._samples0) else 0
        )
        file.write(_MAGIC)
        file.write(struct.pack("<HBB", _FORMAT_VERSION, _KIND_FLAT, flags))
        file.write(struct.pack("<QQ", self._n, self._total1))
        for arr in (self._l0, self._ebuf, self._samples1, self._samples0):
            file.write(struct.pack("<Q", len(arr)))
            file.write(arr.astype("<u8", copy=False).tobytes())

    @classmethod
    def load(cls, file, bv):
        if not hasattr(file, "read"):
            with open(file, "rb") as f:
                return cls.load(f, bv)
        kind, flags, n, total1, arrays = _read_dump(file, expected_kind=_KIND_FLAT)
        if n != len(bv):
            raise ValueError("index dump does not match the vector length")
        idx = cls.__new__(cls)
        idx._bv = bv
        idx._n = n
        idx._total1 = total1
        idx._l0, idx._ebuf, idx._samples1, idx._samples0 = arrays
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
        return f"FlatIndex(n={self._n}, ones={self._total1}, l0={self.has_l0})"


def _read_dump(file, expected_kind):
    """Parse the shared dump layout; returns (kind, flags, n, total1, arrays)."""
    magic = file.read(4)
    if magic != _MAGIC:
        raise ValueError("not an index dump")
    version, kind, flags = struct.unpack("<HBB", file.read(4))
    if version != _FORMAT_VERSION:
        raise ValueError(f"unsupported index dump version {version}")
    if kind != expected_kind:
        raise ValueError("index dump holds a different structure kind")
    n, total1 = struct.unpack("<QQ", file.read(16))
    arrays = []
    for _ in range(4):
        (count,) = struct.unpack("<Q", file.read(8))
        raw = file.read(8 * count)
        if len(raw) != 8 * count:
            raise ValueError("truncated index dump")
        arrays.append(np.frombuffer(raw, dtype="<u8").astype(np.uint64))
    return kind, flags, n, total1, arrays
