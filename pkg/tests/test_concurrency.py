"""Built indexes are immutable: concurrent readers must see identical answers."""

import threading

import numpy as np

from conftest import random_bitvector
from ranksel import FlatIndex, PoppyIndex, WideIndex
from ranksel import oracle


def test_concurrent_batch_queries(backend):
    bv = random_bitvector(300_000, 0.5, seed=55)
    indexes = [PoppyIndex(bv, samples="both"),
               FlatIndex(bv, samples="both"),
               WideIndex(bv, samples="both")]
    rank_expect = oracle.rank_table(bv, 1)
    select_expect = oracle.select_table(bv, 1)
    rng = np.random.default_rng(56)
    positions = rng.integers(0, len(bv) + 1, 5_000)
    ranks = rng.integers(1, len(select_expect) + 1, 5_000)

    failures = []

    def worker(idx):
        for _ in range(3):
            if not np.array_equal(idx.rank1_batch(positions), rank_expect[positions]):
                failures.append((idx, "rank"))
            if not np.array_equal(idx.select_batch(1, ranks), select_expect[ranks - 1]):
                failures.append((idx, "select"))

    threads = [threading.Thread(target=worker, args=(idx,))
               for idx in indexes for _ in range(3)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not failures
