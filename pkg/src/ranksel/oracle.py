"""Brute-force rank and select, used as ground truth in tests.

Deliberately independent of every indexed code path: queries are answered
on a per-bit shadow array unpacked straight from the words.  O(n) per
query by design; never benchmarked, only trusted.

rank uses the exclusive prefix convention throughout this project:
rank_alpha(i) counts alpha-bits in positions [0, i), and
select_alpha(j) with 1-based j is its inverse
(rank_alpha(select_alpha(j)) == j - 1).
"""

import numpy as np


def bit_array(bv):
    """Per-bit shadow copy of the vector as a uint8 array."""
    if len(bv) == 0:
        return np.zeros(0, dtype=np.uint8)
    return np.unpackbits(bv.words.view(np.uint8), count=len(bv), bitorder="little")


def naive_rank(bv, alpha, i):
    """Number of alpha-bits in positions [0, i); i may equal the length."""
    if alpha not in (0, 1):
        raise ValueError("alpha must be 0 or 1")
    if not 0 <= i <= len(bv):
        raise ValueError("rank position out of range")
    return int(np.count_nonzero(bit_array(bv)[:i] == alpha))


def naive_select(bv, alpha, j):
    """Position of the j-th alpha-bit (j is 1-based)."""
    if alpha not in (0, 1):
        raise ValueError("alpha must be 0 or 1")
    positions = np.flatnonzero(bit_array(bv) == alpha)
    if not 1 <= j <= len(positions):
        raise ValueError("rank does not exist")
    return int(positions[j - 1])


def rank_table(bv, alpha):
    """rank_alpha(i) for every i in [0, n], as one array of length n + 1."""
    matches = (bit_array(bv) == alpha).astype(np.uint64)
    table = np.zeros(len(bv) + 1, dtype=np.uint64)
    np.cumsum(matches, out=table[1:])
    return table


def select_table(bv, alpha):
    """Positions of all alpha-bits in order; entry j-1 answers select(j)."""
    return np.flatnonzero(bit_array(bv) == alpha).astype(np.uint64)
