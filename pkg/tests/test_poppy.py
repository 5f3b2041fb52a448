import numpy as np
import pytest

from conftest import random_bitvector
from ranksel import BitVector, PoppyIndex
from ranksel import oracle


def test_build_all_zeros():
    bv = BitVector(1 << 20, 0)
    idx = PoppyIndex(bv, samples="ones")
    assert np.all(idx._l12 == 0)
    assert len(idx._samples1) == 0
    assert idx.total_ones == 0


def test_build_all_ones_entries():
    bv = BitVector(8192, 1)
    idx = PoppyIndex(bv)
    for k in range(4):
        e = int(idx._l12[k])
        assert e & 0xFFFFFFFF == 2048 * k
        fields = e >> 32
        for t in range(3):
            assert (fields >> (10 * t)) & 0x3FF == 512


def test_build_matches_per_block_popcounts():
    bv = random_bitvector(3 * 2048 + 700, 0.5, seed=8)
    idx = PoppyIndex(bv)
    n = len(bv)
    for b in range(len(idx._l12)):
        e = int(idx._l12[b])
        start = b * 2048
        assert e & 0xFFFFFFFF == bv.count_ones_range(0, min(start, n))
        fields = e >> 32
        for t in range(3):
            lo = min(start + 512 * t, n)
            hi = min(start + 512 * (t + 1), n)
            assert (fields >> (10 * t)) & 0x3FF == bv.count_ones_range(lo, hi)


def test_entry_layout_byte_offsets():
    # l1 must sit at byte offset 0 of each 8-byte entry (direct 32-bit load,
    # no shift), the packed 10-bit fields at offset 4
    bv = random_bitvector(6000, 0.5, seed=9)
    idx = PoppyIndex(bv)
    raw = idx._l12.astype("<u8").tobytes()
    for b in range(len(idx._l12)):
        l1 = int.from_bytes(raw[8 * b : 8 * b + 4], "little")
        fields = int.from_bytes(raw[8 * b + 4 : 8 * b + 8], "little")
        assert l1 == bv.count_ones_range(0, min(b * 2048, len(bv)))
        expected = int(idx._l12[b]) >> 32
        assert fields == expected


def test_next_entry_is_derivable():
    # within one superblock: l1(b+1) == l1(b) + stored fields + fourth count
    bv = random_bitvector(5 * 2048, 0.5, seed=10)
    idx = PoppyIndex(bv)
    for b in range(len(idx._l12) - 1):
        e = int(idx._l12[b])
        fields = e >> 32
        stored = sum((fields >> (10 * t)) & 0x3FF for t in range(3))
        fourth = bv.count_ones_range(b * 2048 + 1536, (b + 1) * 2048)
        assert int(idx._l12[b + 1]) & 0xFFFFFFFF == (e & 0xFFFFFFFF) + stored + fourth


def test_rank_trivial_cases(backend):
    bv = BitVector(8192, 1)
    idx = PoppyIndex(bv)
    assert idx.rank1(0) == 0
    for i in (0, 511, 512, 2047, 2048, 4096):
        assert idx.rank1(i) == i
    assert idx.rank0(0) == 0


def test_rank0_on_all_zeros(backend):
    bv = BitVector(4096, 0)
    idx = PoppyIndex(bv)
    for i in (0, 1, 555, 4096):
        assert idx.rank0(i) == i


def test_rank_matches_oracle(backend):
    bv = random_bitvector(200_000, 0.5, seed=11)
    idx = PoppyIndex(bv)
    table = oracle.rank_table(bv, 1)
    rng = np.random.default_rng(12)
    positions = rng.integers(0, len(bv) + 1, 5_000)
    assert np.array_equal(idx.rank1_batch(positions), table[positions])
    table0 = oracle.rank_table(bv, 0)
    assert np.array_equal(idx.rank0_batch(positions), table0[positions])


def test_select_all_ones(backend):
    bv = BitVector(3 * 8192, 1)
    idx = PoppyIndex(bv)
    for j in (1, 512, 2048, 8192, 8193):
        assert idx.select(1, j) == j - 1


def test_select_alternating_closed_form(backend):
    n = 1 << 15
    bv = BitVector(n)
    for i in range(1, n, 2):
        bv.set(i, 1)
    idx = PoppyIndex(bv, samples="both")
    for j in (1, 2, 1000, 8192, 8193, n // 2):
        assert idx.select1(j) == 2 * j - 1
        assert idx.select0(j) == 2 * j - 2


@pytest.mark.parametrize("density", [0.1, 0.5, 0.9])
def test_select_matches_oracle(backend, density):
    bv = random_bitvector(120_000, density, seed=13)
    idx = PoppyIndex(bv, samples="both")
    rng = np.random.default_rng(14)
    for alpha in (0, 1):
        table = oracle.select_table(bv, alpha)
        js = rng.integers(1, len(table) + 1, 3_000)
        assert np.array_equal(idx.select_batch(alpha, js), table[js - 1])


def test_select_without_matching_samples_still_works(backend):
    bv = random_bitvector(50_000, 0.5, seed=15)
    ones_only = PoppyIndex(bv, samples="ones")
    zeros_only = PoppyIndex(bv, samples="zeros")
    table0 = oracle.select_table(bv, 0)
    table1 = oracle.select_table(bv, 1)
    for j in (1, 100, len(table0)):
        assert ones_only.select0(j) == int(table0[j - 1])
    for j in (1, 100, len(table1)):
        assert zeros_only.select1(j) == int(table1[j - 1])


def test_rank_select_duality(backend):
    bv = random_bitvector(70_000, 0.3, seed=16)
    idx = PoppyIndex(bv, samples="both")
    rng = np.random.default_rng(17)
    for alpha in (0, 1):
        total = idx.total_ones if alpha else idx.total_zeros
        for j in rng.integers(1, total + 1, 100):
            p = idx.select(alpha, int(j))
            assert idx.rank(alpha, p) == int(j) - 1
            assert bv.get(p) == alpha


def test_space_accounting_exact():
    n = 1 << 22
    bv = random_bitvector(n, 0.5, seed=18)
    idx = PoppyIndex(bv, samples="ones")
    breakdown = idx.space_breakdown()
    assert breakdown["l0"] == 8
    assert breakdown["l12"] == 8 * (n // 2048)
    assert breakdown["samples"] == 8 * len(idx._samples1)
    bits = idx.space_bytes() * 8
    assert bits == 64 * 1 + 64 * (n // 2048) + 64 * len(idx._samples1)


def test_sample_config_both_doubles_sample_storage():
    bv = random_bitvector(1 << 18, 0.5, seed=19)
    ones = PoppyIndex(bv, samples="ones")
    both = PoppyIndex(bv, samples="both")
    assert both.space_breakdown()["samples"] > ones.space_breakdown()["samples"]
    with pytest.raises(ValueError):
        PoppyIndex(bv, samples="none")


def test_query_validation(backend):
    bv = random_bitvector(1000, 0.5, seed=20)
    idx = PoppyIndex(bv)
    with pytest.raises(ValueError):
        idx.rank1(1001)
    with pytest.raises(ValueError):
        idx.select(1, 0)
    with pytest.raises(ValueError):
        idx.select(1, idx.total_ones + 1)
    with pytest.raises(ValueError):
        idx.select(2, 1)
