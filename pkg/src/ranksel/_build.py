"""Shared single-pass construction machinery for all index layouts.

Every index is assembled from the same raw material: the popcount of each
512-bit basic block, produced in one left-to-right sweep by the active
kernel backend.  The layout-specific packing on top of that is cheap
vectorized arithmetic and lives in the poppy/flat/wide modules.
"""

import numpy as np

from . import _backend
from ._layout import BASIC_BITS, SAMPLE_RATE


def basic_block_counts(bv):
    """Popcount of every 512-bit basic block of the vector."""
    words = bv.words
    if len(words) == 0:
        return np.zeros(0, dtype=np.uint64)
    return np.asarray(_backend.kernels.block_popcounts(words), dtype=np.uint64)


def cumulative(block_counts):
    """cum[k] = ones before basic block k; one extra entry holds the total."""
    cum = np.zeros(len(block_counts) + 1, dtype=np.uint64)
    np.cumsum(block_counts, out=cum[1:])
    return cum


def pad_rows(block_counts, per_row):
    """Reshape to (rows, per_row), zero-padding the tail blocks."""
    rows = -(-len(block_counts) // per_row) if len(block_counts) else 0
    padded = np.zeros(rows * per_row, dtype=np.uint64)
    padded[: len(block_counts)] = block_counts
    return padded.reshape(rows, per_row)


def build_samples(bv, cum, alpha):
    """Positions of every SAMPLE_RATE-th alpha bit, anchored at rank 1.

    samples[m] is the absolute position of the (m * SAMPLE_RATE + 1)-th
    alpha bit, so the starting sample for a query with rank j is
    samples[(j - 1) // SAMPLE_RATE].
    """
    n = len(bv)
    nblocks = len(cum) - 1
    if alpha:
        cum_alpha = cum
    else:
        starts = np.minimum(np.arange(nblocks + 1, dtype=np.uint64) * BASIC_BITS, n)
        cum_alpha = starts - cum
    total = int(cum_alpha[-1])
    if total == 0:
        return np.zeros(0, dtype=np.uint64)

    ranks = np.arange(0, total, SAMPLE_RATE, dtype=np.uint64) + 1
    blocks = np.searchsorted(cum_alpha, ranks, side="left") - 1
    in_block = (ranks - cum_alpha[blocks]).astype(np.int64)

    out = np.zeros(len(ranks), dtype=np.uint64)
    _backend.kernels.basic_select_batch(
        bv.words, blocks.astype(np.int64), in_block, alpha, out
    )
    return out


def samples_config(cfg, allowed):
    """Normalize a samples config string; returns (want_ones, want_zeros)."""
    if cfg not in allowed:
        raise ValueError(f"samples must be one of {sorted(allowed)}, got {cfg!r}")
    return cfg in ("ones", "both"), cfg in ("zeros", "both")
