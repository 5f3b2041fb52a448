"""Pure-Python query kernels.

This module is the portable twin of the compiled extension
(``ranksel._kernels``): it implements the exact same operations with the
exact same semantics, one Python function per kernel.  ``ranksel._backend``
picks whichever of the two is available (the compiled one wins unless
overridden), so everything above this layer is backend-agnostic.

All kernels take plain integers plus numpy arrays and never allocate
index structures themselves; building lives in ``ranksel._build``.
"""

import numpy as np

IS_COMPILED = False
HAS_PDEP = False

_M64 = (1 << 64) - 1

# ---------------------------------------------------------------------------
# word-level primitives

# positions of set bits per byte value, LSB first
_BYTE_SELECT = tuple(
    tuple(i for i in range(8) if (b >> i) & 1) for b in range(256)
)


def popcount_word(w):
    return int(w).bit_count()


def select_in_word(w, j):
    """Position of the j-th (1-based) set bit of w, counting from the LSB."""
    w = int(w)
    r = j
    for byte_i in range(8):
        b = (w >> (8 * byte_i)) & 0xFF
        c = b.bit_count()
        if r <= c:
            return 8 * byte_i + _BYTE_SELECT[b][r - 1]
        r -= c
    raise ValueError("word has fewer than j set bits")


def select0_in_word(w, j):
    return select_in_word(~int(w) & _M64, j)


def set_select_path(name):
    """The pure backend only has the portable byte-table path."""
    if name not in ("auto", "portable"):
        raise ValueError(f"pure backend has no {name!r} select path")


def select_path():
    return "portable"


# ---------------------------------------------------------------------------
# construction helpers

def block_popcounts(words):
    """Popcount of every 512-bit basic block (8-word groups, short tail ok)."""
    counts = np.bitwise_count(words).astype(np.uint64)
    nb = -(-len(words) // 8)
    if len(counts) != nb * 8:
        counts = np.concatenate([counts, np.zeros(nb * 8 - len(counts), np.uint64)])
    return counts.reshape(nb, 8).sum(axis=1, dtype=np.uint64)


def count_ones_range(words, start, end):
    """Number of set bits in bit positions [start, end) of the word array."""
    if start >= end:
        return 0
    ws = start >> 6
    we = (end - 1) >> 6
    first = int(words[ws]) >> (start & 63)
    if ws == we:
        return (first & ((1 << (end - start)) - 1)).bit_count()
    total = first.bit_count()
    if we > ws + 1:
        total += int(np.bitwise_count(words[ws + 1 : we]).sum())
    rem = end - (we << 6)
    total += (int(words[we]) & ((1 << rem) - 1)).bit_count()
    return total


# ---------------------------------------------------------------------------
# poppy kernels
#
# One 64-bit entry per 2048-bit block: low 32 bits hold the ones before the
# block within its 2^32-bit superblock, the high 32 bits pack the popcounts
# of the block's first three 512-bit basic blocks, 10 bits each.


def poppy_rank1(l0, l12, words, n, total_ones, i):
    if i == n:
        return total_ones
    e = int(l12[i >> 11])
    res = int(l0[i >> 32]) + (e & 0xFFFFFFFF)
    k = (i >> 9) & 3
    fields = e >> 32
    for t in range(k):
        res += (fields >> (10 * t)) & 0x3FF
    w0 = (i >> 9) << 3
    wq = i >> 6
    for w in range(w0, wq):
        res += int(words[w]).bit_count()
    rem = i & 63
    if rem:
        res += (int(words[wq]) & ((1 << rem) - 1)).bit_count()
    return res


def poppy_select(l0, l12, samples, words, n, alpha, j):
    # top-level block by linear scan (zeros derived from block size - ones)
    b0 = 0
    nl0 = len(l0)
    if alpha:
        while b0 + 1 < nl0 and int(l0[b0 + 1]) < j:
            b0 += 1
        jr = j - int(l0[b0])
    else:
        while b0 + 1 < nl0 and ((b0 + 1) << 32) - int(l0[b0 + 1]) < j:
            b0 += 1
        jr = j - ((b0 << 32) - int(l0[b0]))

    base = b0 << 21
    end = min(len(l12), (b0 + 1) << 21)
    start = base
    if len(samples):
        sb = int(samples[(j - 1) >> 13]) >> 11
        if sb > start:
            start = sb

    b = start
    if alpha:
        while b + 1 < end and (int(l12[b + 1]) & 0xFFFFFFFF) < jr:
            b += 1
        e = int(l12[b])
        r = jr - (e & 0xFFFFFFFF)
    else:
        while b + 1 < end and ((b + 1 - base) << 11) - (int(l12[b + 1]) & 0xFFFFFFFF) < jr:
            b += 1
        e = int(l12[b])
        r = jr - (((b - base) << 11) - (e & 0xFFFFFFFF))

    # basic block by scanning the delta-coded 10-bit fields
    fields = e >> 32
    k = 0
    while k < 3:
        f = (fields >> (10 * k)) & 0x3FF
        if not alpha:
            f = 512 - f
        if r <= f:
            break
        r -= f
        k += 1

    return _finish_in_basic_block(words, ((b << 2) + k) << 3, alpha, r)


def _finish_in_basic_block(words, w, alpha, r):
    while True:
        word = int(words[w])
        c = word.bit_count() if alpha else 64 - word.bit_count()
        if r <= c:
            if alpha:
                return (w << 6) + select_in_word(word, r)
            return (w << 6) + select0_in_word(word, r)
        r -= c
        w += 1


def basic_select_batch(words, blocks, ranks, alpha, out):
    """Per query: position of the rank-th alpha bit inside basic block b."""
    for m in range(len(blocks)):
        out[m] = _finish_in_basic_block(words, int(blocks[m]) << 3, alpha, int(ranks[m]))


# ---------------------------------------------------------------------------
# flat kernels
#
# One 128-bit entry per 4096-bit block, stored as two adjacent uint64 words
# (lo, hi): bits [0,44) hold the ones before the block, bits
# [44+12(k-1), 44+12k) hold c_k = ones in the block before its k-th 512-bit
# basic block (k = 1..7, c_0 is implicit).

_L1_MASK = (1 << 44) - 1

LINEAR = 0
UNIFORM_BINARY = 1
PARALLEL_COMPARE = 2


def unpack_12_to_16(packed):
    """Spread seven packed 12-bit fields into seven 16-bit lanes.

    Mirrors the SIMD widening step: read a 16-bit word at every third byte
    and mask the low 12 bits (fields 1,3,5,7), read one at the following
    byte and shift right by 4 (fields 2,4,6), then interleave.
    """
    packed = int(packed)
    lanes = [0] * 7
    for m in range(4):
        lanes[2 * m] = ((packed >> (24 * m)) & 0xFFFF) & 0x0FFF
    for m in range(3):
        lanes[2 * m + 1] = ((packed >> (24 * m + 8)) & 0xFFFF) >> 4
    return tuple(lanes)


def search7_linear(counts, r):
    """Index of the basic block holding the r-th target bit: |{k : c_k < r}|."""
    b = 0
    while b < 7 and counts[b] < r:
        b += 1
    return b


def search7_binary(counts, r):
    """Same result as search7_linear with a fixed three-comparison schedule."""
    b = 4 if counts[3] < r else 0
    if counts[b + 1] < r:
        b += 2
    if counts[b] < r:
        b += 1
    return b


def search7_parallel(packed, r, zeros=False):
    """Same result via lane-parallel compare semantics.

    All seven widened lanes are compared against r - 1 at once (there is no
    greater-or-equal lane compare); the number of qualifying lanes q gives
    the block index as 7 - q.
    """
    lanes = unpack_12_to_16(packed)
    t = r - 1
    if zeros:
        q = sum(1 for k in range(7) if 512 * (k + 1) - lanes[k] > t)
    else:
        q = sum(1 for k in range(7) if lanes[k] > t)
    return 7 - q


def flat_rank1(l0, ebuf, words, n, total_ones, i):
    if i == n:
        return total_ones
    b = i >> 12
    e = int(ebuf[2 * b]) | (int(ebuf[2 * b + 1]) << 64)
    res = e & _L1_MASK
    if len(l0):
        res += int(l0[i >> 44])
    k = (i >> 9) & 7
    if k:
        res += (e >> (44 + 12 * (k - 1))) & 0xFFF
    w0 = (i >> 9) << 3
    wq = i >> 6
    for w in range(w0, wq):
        res += int(words[w]).bit_count()
    rem = i & 63
    if rem:
        res += (int(words[wq]) & ((1 << rem) - 1)).bit_count()
    return res


def flat_select(l0, ebuf, samples, words, n, alpha, j, strategy):
    nl1 = len(ebuf) >> 1
    b0 = 0
    jr = j
    base = 0
    end = nl1
    nl0 = len(l0)
    if nl0:
        if alpha:
            while b0 + 1 < nl0 and int(l0[b0 + 1]) < j:
                b0 += 1
            jr = j - int(l0[b0])
        else:
            while b0 + 1 < nl0 and ((b0 + 1) << 44) - int(l0[b0 + 1]) < j:
                b0 += 1
            jr = j - ((b0 << 44) - int(l0[b0]))
        base = b0 << 32
        end = min(nl1, (b0 + 1) << 32)

    start = base
    if len(samples):
        sb = int(samples[(j - 1) >> 13]) >> 12
        if sb > start:
            start = sb

    b = start
    if alpha:
        while b + 1 < end and (int(ebuf[2 * b + 2]) & _L1_MASK) < jr:
            b += 1
        r = jr - (int(ebuf[2 * b]) & _L1_MASK)
    else:
        while b + 1 < end and ((b + 1 - base) << 12) - (int(ebuf[2 * b + 2]) & _L1_MASK) < jr:
            b += 1
        r = jr - (((b - base) << 12) - (int(ebuf[2 * b]) & _L1_MASK))

    e = int(ebuf[2 * b]) | (int(ebuf[2 * b + 1]) << 64)
    packed = e >> 44
    if strategy == PARALLEL_COMPARE:
        k = search7_parallel(packed, r, zeros=not alpha)
    else:
        if alpha:
            counts = unpack_12_to_16(packed)
        else:
            lanes = unpack_12_to_16(packed)
            counts = tuple(512 * (t + 1) - lanes[t] for t in range(7))
        k = search7_binary(counts, r) if strategy == UNIFORM_BINARY else search7_linear(counts, r)

    if k:
        ck = (e >> (44 + 12 * (k - 1))) & 0xFFF
        r -= ck if alpha else (k << 9) - ck

    return _finish_in_basic_block(words, ((b << 3) + k) << 3, alpha, r)


# ---------------------------------------------------------------------------
# wide kernels
#
# One 64-bit counter per 65536-bit block (ones before the block, from the
# start of the vector) plus a flat array of 16-bit cumulative counters,
# 127 per block: l2[127*b + k - 1] = ones in block b before its k-th
# 512-bit basic block.


def search127_linear(counts, r):
    b = 0
    while b < 127 and counts[b] < r:
        b += 1
    return b


def search127_binary(counts, r):
    """Fixed seven-level schedule over 127 cumulative counters."""
    b = 64 if counts[63] < r else 0
    for step in (32, 16, 8, 4, 2, 1):
        if counts[b + step - 1] < r:
            b += step
    return b


def search127_parallel(counts, r):
    t = r - 1
    q = sum(1 for k in range(127) if counts[k] > t)
    return 127 - q


def wide_rank1(l1, l2, words, n, total_ones, i):
    if i == n:
        return total_ones
    b = i >> 16
    res = int(l1[b])
    k = (i >> 9) & 127
    if k:
        res += int(l2[127 * b + k - 1])
    w0 = (i >> 9) << 3
    wq = i >> 6
    for w in range(w0, wq):
        res += int(words[w]).bit_count()
    rem = i & 63
    if rem:
        res += (int(words[wq]) & ((1 << rem) - 1)).bit_count()
    return res


def wide_select(l1, l2, samples, words, n, alpha, j, strategy):
    nl1 = len(l1)
    start = 0
    if len(samples):
        start = int(samples[(j - 1) >> 13]) >> 16

    b = start
    if alpha:
        while b + 1 < nl1 and int(l1[b + 1]) < j:
            b += 1
        r = j - int(l1[b])
    else:
        while b + 1 < nl1 and ((b + 1) << 16) - int(l1[b + 1]) < j:
            b += 1
        r = j - ((b << 16) - int(l1[b]))

    off = 127 * b
    if alpha:
        counts = l2[off : off + 127]
    else:
        counts = [((k + 1) << 9) - int(l2[off + k]) for k in range(127)]
    if strategy == PARALLEL_COMPARE:
        k = search127_parallel(counts, r)
    elif strategy == UNIFORM_BINARY:
        k = search127_binary(counts, r)
    else:
        k = search127_linear(counts, r)

    if k:
        r -= int(counts[k - 1])

    return _finish_in_basic_block(words, ((b << 7) + k) << 3, alpha, r)


# ---------------------------------------------------------------------------
# batch variants (plain loops; the compiled backend replaces these with C)

def poppy_rank1_batch(l0, l12, words, n, total_ones, queries, out):
    for t in range(len(queries)):
        out[t] = poppy_rank1(l0, l12, words, n, total_ones, int(queries[t]))


def poppy_select_batch(l0, l12, samples, words, n, alpha, queries, out):
    for t in range(len(queries)):
        out[t] = poppy_select(l0, l12, samples, words, n, alpha, int(queries[t]))


def flat_rank1_batch(l0, ebuf, words, n, total_ones, queries, out):
    for t in range(len(queries)):
        out[t] = flat_rank1(l0, ebuf, words, n, total_ones, int(queries[t]))


def flat_select_batch(l0, ebuf, samples, words, n, alpha, queries, out, strategy):
    for t in range(len(queries)):
        out[t] = flat_select(l0, ebuf, samples, words, n, alpha, int(queries[t]), strategy)


def wide_rank1_batch(l1, l2, words, n, total_ones, queries, out):
    for t in range(len(queries)):
        out[t] = wide_rank1(l1, l2, words, n, total_ones, int(queries[t]))


def wide_select_batch(l1, l2, samples, words, n, alpha, queries, out, strategy):
    for t in range(len(queries)):
        out[t] = wide_select(l1, l2, samples, words, n, alpha, int(queries[t]), strategy)
