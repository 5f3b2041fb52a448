"""Compiled and pure kernels must be indistinguishable, query by query."""

import numpy as np
import pytest

from conftest import random_bitvector
from ranksel import FlatIndex, PoppyIndex, WideIndex, _backend

pytestmark = pytest.mark.skipif(
    "compiled" not in _backend.available(),
    reason="compiled kernels not built",
)


@pytest.mark.parametrize("density", [0.02, 0.5, 0.97])
@pytest.mark.parametrize("n", [1, 63, 513, 4096, 150_000])
def test_all_queries_agree(n, density):
    bv = random_bitvector(n, density, seed=n + int(density * 100))
    rng = np.random.default_rng(1000 + n)
    positions = rng.integers(0, n + 1, 800)

    results = {}
    for backend in ("compiled", "pure"):
        with _backend.using(backend):
            out = {}
            poppy = PoppyIndex(bv, samples="both")
            flat = FlatIndex(bv, samples="both")
            wide = WideIndex(bv, samples="both")
            for name, idx in (("poppy", poppy), ("flat", flat), ("wide", wide)):
                out[name, "rank1"] = idx.rank1_batch(positions)
                for alpha in (0, 1):
                    total = idx.total_ones if alpha else idx.total_zeros
                    if total == 0:
                        continue
                    js = np.random.default_rng(7).integers(1, total + 1, 400)
                    if name == "poppy":
                        out[name, f"select{alpha}"] = idx.select_batch(alpha, js)
                    else:
                        for strat in ("linear", "binary", "parallel"):
                            out[name, f"select{alpha}", strat] = idx.select_batch(alpha, js, strat)
            results[backend] = out

    assert results["compiled"].keys() == results["pure"].keys()
    for key, compiled_out in results["compiled"].items():
        assert np.array_equal(compiled_out, results["pure"][key]), key


def test_word_primitives_agree():
    rng = np.random.default_rng(2024)
    words = rng.integers(0, 1 << 64, 5_000, dtype=np.uint64)
    with _backend.using("compiled"):
        compiled = _backend.kernels
        with _backend.using("pure"):
            pure = _backend.kernels
    for w in words:
        w = int(w)
        assert compiled.popcount_word(w) == pure.popcount_word(w)
        pc = w.bit_count()
        if pc:
            j = 1 + (w % pc)
            assert compiled.select_in_word(w, j) == pure.select_in_word(w, j)
        zc = 64 - pc
        if zc:
            j = 1 + (w % zc)
            assert compiled.select0_in_word(w, j) == pure.select0_in_word(w, j)


def test_block_popcounts_agree():
    rng = np.random.default_rng(11)
    for nwords in (1, 7, 8, 9, 4097):
        words = rng.integers(0, 1 << 64, nwords, dtype=np.uint64)
        with _backend.using("compiled"):
            a = _backend.kernels.block_popcounts(words)
        with _backend.using("pure"):
            b = _backend.kernels.block_popcounts(words)
        assert np.array_equal(a, b)


def test_count_ones_range_agree():
    rng = np.random.default_rng(12)
    words = rng.integers(0, 1 << 64, 64, dtype=np.uint64)
    with _backend.using("compiled"):
        compiled = _backend.kernels
    with _backend.using("pure"):
        pure = _backend.kernels
    for _ in range(500):
        a, b = sorted(rng.integers(0, 64 * 64 + 1, 2))
        assert compiled.count_ones_range(words, int(a), int(b)) == \
            pure.count_ones_range(words, int(a), int(b))
