"""Fixed-length bit vector stored in 64-bit words.

Bit i of the vector is bit (i mod 64) of word (i div 64), i.e. little-endian
within a word, so in-word select counts from the LSB.  Bits at positions
>= length in the last word are always zero; every mutating operation keeps
that padding invariant, which the index builders rely on.

The vector is mutable, but the rank/select indexes built over it capture a
snapshot guarantee: mutating a vector after an index was built over it
invalidates that index (this is documented, not tracked).  Reads are safe
from any number of threads; mutation requires exclusive access.
"""

import struct

import numpy as np

from . import _backend

_WORD_MASK = (1 << 64) - 1


class BitVector:
    """A plain bit vector of fixed length with word-level access."""

    __slots__ = ("_n", "_words")

    def __init__(self, length_bits, fill=0):
        if length_bits < 0:
            raise ValueError("length_bits must be non-negative")
        if fill not in (0, 1):
            raise ValueError("fill must be 0 or 1")
        self._n = int(length_bits)
        nwords = -(-self._n // 64)
        if fill:
            self._words = np.full(nwords, _WORD_MASK, dtype=np.uint64)
            self._mask_padding()
        else:
            self._words = np.zeros(nwords, dtype=np.uint64)

    @classmethod
    def from_words(cls, length_bits, words):
        """Wrap an existing uint64 array (copied); padding bits must be zero."""
        bv = cls.__new__(cls)
        bv._n = int(length_bits)
        words = np.ascontiguousarray(words, dtype=np.uint64)
        if len(words) != -(-bv._n // 64):
            raise ValueError("word array length does not match length_bits")
        bv._words = words.copy()
        bv._check_padding()
        return bv

    def _mask_padding(self):
        rem = self._n & 63
        if rem and len(self._words):
            self._words[-1] &= np.uint64((1 << rem) - 1)

    def _check_padding(self):
        rem = self._n & 63
        if rem and len(self._words):
            if int(self._words[-1]) >> rem:
                raise ValueError("nonzero padding bits beyond length_bits")

    def __len__(self):
        return self._n

    @property
    def length_bits(self):
        return self._n

    @property
    def words(self):
        """Read-only view of the underlying word array."""
        v = self._words.view()
        v.flags.writeable = False
        return v

    @property
    def word_count(self):
        return len(self._words)

    def word(self, w):
        """Raw 64-bit word w; the last word carries zero padding."""
        if not 0 <= w < len(self._words):
            raise IndexError("word index out of range")
        return int(self._words[w])

    def get(self, i):
        if not 0 <= i < self._n:
            raise IndexError("bit index out of range")
        return (int(self._words[i >> 6]) >> (i & 63)) & 1

    def set(self, i, b):
        if not 0 <= i < self._n:
            raise IndexError("bit index out of range")
        if b not in (0, 1):
            raise ValueError("bit value must be 0 or 1")
        w = i >> 6
        mask = 1 << (i & 63)
        if b:
            self._words[w] = np.uint64(int(self._words[w]) | mask)
        else:
            self._words[w] = np.uint64(int(self._words[w]) & ~mask & _WORD_MASK)

    __getitem__ = get

    def __setitem__(self, i, b):
        self.set(i, b)

    def count_ones_range(self, start, end):
        """Number of 1-bits in positions [start, end)."""
        if not 0 <= start <= end <= self._n:
            raise ValueError("invalid bit range")
        return _backend.kernels.count_ones_range(self._words, start, end)

    def count_ones(self):
        return self.count_ones_range(0, self._n)

    def count_zeros(self):
        return self._n - self.count_ones()

    # -- flat binary file format: 8-byte little-endian bit length, then the
    #    word array, each word little-endian
    def save(self, file):
        if hasattr(file, "write"):
            file.write(struct.pack("<Q", self._n))
            file.write(self._words.astype("<u8", copy=False).tobytes())
        else:
            with open(file, "wb") as f:
                self.save(f)

    @classmethod
    def load(cls, file):
        if hasattr(file, "read"):
            header = file.read(8)
            if len(header) != 8:
                raise ValueError("truncated bit vector file")
            (n,) = struct.unpack("<Q", header)
            nwords = -(-n // 64)
            raw = file.read(8 * nwords)
            if len(raw) != 8 * nwords:
                raise ValueError("truncated bit vector file")
            words = np.frombuffer(raw, dtype="<u8").astype(np.uint64)
            return cls.from_words(n, words)
        with open(file, "rb") as f:
            return cls.load(f)

    def __repr__(self):
        return f"BitVector(length_bits={self._n})"
