"""Acceptance suite: one test and one printed pass/fail line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` (add ``-s`` to watch the
per-criterion lines as they complete).  The whole suite is deterministic.
"""

import csv
import itertools
import subprocess
import sys
import time
import warnings

import numpy as np
import pytest

from ranksel import BitVector, FlatIndex, PoppyIndex, SearchStrategy, WideIndex
from ranksel import oracle
from ranksel.flat import pack_l2_fields, search_l2_binary, search_l2_linear, search_l2_parallel
from ranksel.flat import unpack_12_to_16
from ranksel import wide as wide_mod
from ranksel.workload import gen_adversarial, gen_uniform

N_VALUES = (1, 63, 64, 65, 511, 512, 513, 1 << 16, 1 << 20)
DENSITIES = (1, 10, 50, 90, 99)
DISTRIBUTIONS = ("uniform", "adversarial")
SEEDS = (101, 102, 103, 104, 105)
STRATS = (SearchStrategy.LINEAR, SearchStrategy.UNIFORM_BINARY, SearchStrategy.PARALLEL_COMPARE)

SAMPLED_QUERIES = 10_000
EXHAUSTIVE_RANK_LIMIT = 1 << 16
EXHAUSTIVE_SELECT_LIMIT = 1024


def _report(num, name, extra=""):
    suffix = f" [{extra}]" if extra else ""
    print(f"ACCEPTANCE {num} ({name}): PASS{suffix}", flush=True)


def _gen(n, density, distribution, seed):
    if distribution == "uniform":
        return gen_uniform(n, density, seed)
    return gen_adversarial(n, density, seed)


def test_criterion_1_oracle_equivalence():
    started = time.perf_counter()
    combos = 0
    for n, density, dist, seed in itertools.product(N_VALUES, DENSITIES, DISTRIBUTIONS, SEEDS):
        bv = _gen(n, density, dist, seed)
        rank1 = oracle.rank_table(bv, 1)
        select1 = oracle.select_table(bv, 1)
        select0 = oracle.select_table(bv, 0)

        poppy = PoppyIndex(bv, samples="both")
        flat = FlatIndex(bv, samples="both")
        wide = WideIndex(bv, samples="both")
        structures = ((poppy, (None,)), (flat, STRATS), (wide, STRATS))

        rng = np.random.default_rng(seed * 1_000_003 + n)
        if n <= EXHAUSTIVE_RANK_LIMIT:
            positions = np.arange(n + 1, dtype=np.int64)
        else:
            positions = rng.integers(0, n + 1, SAMPLED_QUERIES)
        expected_r1 = rank1[positions]
        expected_r0 = positions.astype(np.uint64) - expected_r1
        for idx, _ in structures:
            assert np.array_equal(idx.rank1_batch(positions), expected_r1), (n, density, dist, seed, idx)
            assert np.array_equal(idx.rank0_batch(positions), expected_r0), (n, density, dist, seed, idx)

        for alpha, table in ((1, select1), (0, select0)):
            total = len(table)
            if total == 0:
                continue
            if total <= EXHAUSTIVE_SELECT_LIMIT:
                ranks = np.arange(1, total + 1, dtype=np.int64)
            else:
                ranks = rng.integers(1, total + 1, SAMPLED_QUERIES)
            expected = table[ranks - 1]
            for idx, strategies in structures:
                for strategy in strategies:
                    if strategy is None:
                        got = idx.select_batch(alpha, ranks)
                    else:
                        got = idx.select_batch(alpha, ranks, strategy)
                    assert np.array_equal(got, expected), (n, density, dist, seed, alpha, idx, strategy)
        combos += 1

    assert combos == len(N_VALUES) * len(DENSITIES) * len(DISTRIBUTIONS) * len(SEEDS)
    elapsed = time.perf_counter() - started
    if elapsed > 300:
        warnings.warn(f"criterion 1 took {elapsed:.0f}s, above the expected five minutes")
    _report(1, "oracle equivalence, poppy/flat(all strategies)/wide", f"{combos} inputs, {elapsed:.1f}s")


def test_criterion_2_space_formulas():
    # flat rank-only: exactly 3.125% on any 4096-multiple in [2^20, 2^26]
    for n in (1 << 20, (1 << 20) + 4096, 3 << 21, 1 << 26):
        assert n % 4096 == 0
        idx = FlatIndex(BitVector(n, 0), samples="none")
        bits = idx.space_bytes() * 8
        assert bits == 128 * (n // 4096)
        assert 100 * bits / n == 3.125

    # wide rank-only: 3.198% within 0.01pp on 65536-aligned n
    for n in (1 << 20, 1 << 23, 1 << 26):
        assert n % 65536 == 0
        idx = WideIndex(BitVector(n, 0), samples="none")
        pct = 100 * idx.space_bytes() * 8 / n
        assert abs(pct - 3.198) <= 0.01, pct

    # flat with single-type samples on a real 50% vector: at most 3.6% total
    n = 1 << 22
    bv = gen_uniform(n, 50, seed=2024)
    idx = FlatIndex(bv, samples="ones")
    pct = 100 * idx.space_bytes() * 8 / n
    assert pct <= 3.6, pct
    _report(2, "space formulas: flat 3.125%, wide 3.198%, sampled flat <= 3.6%",
            f"sampled flat {pct:.3f}%")


def test_criterion_3_uniform_binary_comparison_count():
    class CountingValue:
        calls = 0

        def __init__(self, v):
            self.v = v

        def __lt__(self, other):
            CountingValue.calls += 1
            return self.v < other

    rng = np.random.default_rng(3)
    tuples = np.sort(rng.integers(0, 1 << 12, (10_000, 7)), axis=1)
    targets = rng.integers(1, 4097, 10_000)
    for row, r in zip(tuples.tolist(), targets.tolist()):
        counts = [CountingValue(v) for v in row]
        before = CountingValue.calls
        got = search_l2_binary(counts, r)
        assert CountingValue.calls - before == 3
        assert got == sum(1 for v in row if v < r)
    _report(3, "uniform binary search: exactly 3 comparisons per call", "10^4 inputs")


def test_criterion_4_strategy_agreement():
    rng = np.random.default_rng(4)

    total7 = 1_000_000
    chunk = 100_000
    for _ in range(total7 // chunk):
        tuples = np.sort(rng.integers(0, 1 << 12, (chunk, 7)), axis=1)
        caps = np.minimum(tuples[:, 6].astype(np.int64) + 512, 4096)
        targets = (rng.random(chunk) * caps).astype(np.int64) + 1
        expected = (tuples < targets[:, None]).sum(axis=1)
        for row, r, want in zip(tuples.tolist(), targets.tolist(), expected.tolist()):
            a = search_l2_linear(row, r)
            b = search_l2_binary(row, r)
            c = search_l2_parallel(pack_l2_fields(row), r)
            assert a == b == c == want, (row, r)

    total127 = 100_000
    for _ in range(total127 // chunk or 1):
        m = min(chunk, total127)
        tuples = np.sort(rng.integers(0, 65025, (m, 127)), axis=1)
        caps = np.minimum(tuples[:, 126].astype(np.int64) + 512, 65536)
        targets = (rng.random(m) * caps).astype(np.int64) + 1
        expected = (tuples < targets[:, None]).sum(axis=1)
        for row, r, want in zip(tuples.tolist(), targets.tolist(), expected.tolist()):
            a = wide_mod.search_l2_linear(row, r)
            b = wide_mod.search_l2_binary(row, r)
            c = wide_mod.search_l2_parallel(row, r)
            assert a == b == c == want, (r,)
    _report(4, "strategy agreement on 10^6 7-tuples and 10^5 127-tuples")


def test_criterion_5_unpack_identity():
    rng = np.random.default_rng(5)
    fields = rng.integers(0, 1 << 12, (100_000, 7))
    for row in fields.tolist():
        assert list(unpack_12_to_16(pack_l2_fields(row))) == row
    _report(5, "pack-then-unpack identity over 10^5 random 12-bit 7-tuples")


def test_criterion_6_zero_side_derivation():
    checked = 0
    for n, density, dist in itertools.product((1 << 16, 1 << 20), (10, 50, 90), DISTRIBUTIONS):
        bv = _gen(n, density, dist, seed=606)
        rank0_table = oracle.rank_table(bv, 0)
        select0_table = oracle.select_table(bv, 0)
        select1_table = oracle.select_table(bv, 1)
        # ones-side samples only: the zero side must still be fully served
        # by the ones-counters (plus interval sizes)
        poppy = PoppyIndex(bv, samples="ones")
        flat = FlatIndex(bv, samples="ones")
        wide = WideIndex(bv, samples="ones")
        rng = np.random.default_rng(607)
        positions = rng.integers(0, n + 1, 4_000)
        for idx in (poppy, flat, wide):
            r1 = idx.rank1_batch(positions)
            r0 = idx.rank0_batch(positions)
            assert np.array_equal(r0, positions.astype(np.uint64) - r1)
            assert np.array_equal(r0, rank0_table[positions])
            js0 = rng.integers(1, len(select0_table) + 1, 2_000)
            js1 = rng.integers(1, len(select1_table) + 1, 2_000)
            assert np.array_equal(idx.select_batch(0, js0), select0_table[js0 - 1])
            assert np.array_equal(idx.select_batch(1, js1), select1_table[js1 - 1])
        checked += 1
    _report(6, "rank0 == i - rank1 and select0/select1 from ones-counters",
            f"{checked} vectors")


def test_criterion_7_benchmark_cli_at_scale(tmp_path):
    n = 1 << 26
    out = tmp_path / "bench.csv"
    result = subprocess.run(
        [sys.executable, "-m", "ranksel.cli",
         "--size", str(n), "--density", "50", "--distribution", "uniform",
         "--queries", "20000", "--runs", "1", "--seed", "777",
         "--samples", "both", "--strategies", "linear,binary,parallel",
         "--csv", str(out), "--quiet"],
        capture_output=True, text=True, timeout=600,
    )
    assert result.returncode == 0, result.stderr

    with open(out, newline="", encoding="utf-8") as f:
        rows = list(csv.DictReader(f))
    assert rows and all(len(r) == 13 for r in rows)
    structures = {r["structure"] for r in rows}
    assert structures == {"poppy", "flat", "wide"}

    # (b) identical result checksums across structures for every query kind
    groups = {}
    for r in rows:
        if r["run_id"] == "mean":
            continue
        groups.setdefault((r["run_id"], r["query_kind"]), set()).add(r["checksum"])
    assert groups
    for key, sums in groups.items():
        assert len(sums) == 1, (key, sums)

    # (a) flat rank touches exactly one 128-bit entry and at most 8 words
    bv = gen_uniform(n, 50, seed=777)
    flat = FlatIndex(bv, samples="both")
    rng = np.random.default_rng(778)
    for i in rng.integers(0, n, 1_000):
        _, entries, words_read = flat.rank1_instrumented(int(i))
        assert entries == 1
        assert words_read <= 8

    # (c) soft sanity: construction at roughly memory speed
    slow = []
    for r in rows:
        if r["run_id"] == "mean":
            continue
        gib_s = n / 8 / max(float(r["construction_seconds"]), 1e-12) / (1 << 30)
        if gib_s < 1.0:
            slow.append((r["structure"], gib_s))
    if slow:
        warnings.warn(f"construction below 1 GiB/s (soft bound): {sorted(set(slow))}")
    _report(7, "benchmark CLI at n=2^26: well-formed CSV, one-entry rank, equal checksums")


def test_criterion_8_cli_determinism(tmp_path):
    args = ["--size", str(1 << 20), "--density", "50", "--distribution", "uniform",
            "--queries", "2000", "--runs", "2", "--seed", "4242",
            "--samples", "both", "--strategies", "parallel,binary", "--quiet"]
    outputs = []
    for name in ("a.csv", "b.csv"):
        path = tmp_path / name
        result = subprocess.run(
            [sys.executable, "-m", "ranksel.cli", *args, "--csv", str(path)],
            capture_output=True, text=True, timeout=600,
        )
        assert result.returncode == 0, result.stderr
        outputs.append(path)

    with open(outputs[0], newline="", encoding="utf-8") as f:
        rows_a = list(csv.reader(f))
    with open(outputs[1], newline="", encoding="utf-8") as f:
        rows_b = list(csv.reader(f))
    assert rows_a[0] == rows_b[0]
    header = rows_a[0]
    timing = {header.index("construction_seconds"), header.index("ns_per_query")}
    assert len(rows_a) == len(rows_b)
    for row_a, row_b in zip(rows_a[1:], rows_b[1:]):
        stripped_a = [v for c, v in enumerate(row_a) if c not in timing]
        stripped_b = [v for c, v in enumerate(row_b) if c not in timing]
        assert stripped_a == stripped_b
    _report(8, "CLI byte-identical across invocations except timing columns")
