"""Reproducible benchmark inputs: random bit vectors and query lists.

Two vector families cover the extreme ends of one-bit distributions:

* uniform - every bit is one independently with the requested density,
* adversarial - with density k%, 99% of the ones land uniformly in the
  last k% of the vector and the remaining one percent in the first
  (100-k)%, giving a very sparse prefix and a very dense suffix.

Queries are pre-generated from their own seed before any index is built:
rank positions uniform over [0, n], select ranks uniform over the valid
range [1, count].  The whole pipeline is a pure function of its seeds.
"""

from dataclasses import dataclass, field

import numpy as np

from .bitvector import BitVector

QUERY_KINDS = ("rank0", "rank1", "select0", "select1")

_GEN_CHUNK_BITS = 1 << 22


@dataclass(frozen=True)
class WorkloadSpec:
    """Parameters of one benchmark workload."""

    n: int
    density: float = 50.0
    distribution: str = "uniform"
    num_queries: int = 1_000_000
    seed: int = 42
    query_kinds: tuple = QUERY_KINDS

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if not 0 < self.density < 100:
            raise ValueError("density must be in (0, 100) percent")
        if self.distribution not in ("uniform", "adversarial"):
            raise ValueError("distribution must be uniform or adversarial")
        if self.num_queries < 0:
            raise ValueError("num_queries must be non-negative")
        unknown = set(self.query_kinds) - set(QUERY_KINDS)
        if unknown:
            raise ValueError(f"unknown query kinds: {sorted(unknown)}")


@dataclass
class QueryWorkload:
    """Pre-generated query arrays, keyed by query kind."""

    spec: WorkloadSpec
    seed: int
    queries: dict = field(default_factory=dict)

    def __getitem__(self, kind):
        return self.queries[kind]


def _pack_bits(n, bit_chunks):
    """Assemble chunked per-bit uint8 arrays into a BitVector."""
    nwords = -(-n // 64)
    raw = np.zeros(nwords * 8, dtype=np.uint8)
    off = 0
    for bits in bit_chunks:
        packed = np.packbits(bits, bitorder="little")
        raw[off : off + len(packed)] = packed
        off += len(packed)
    return BitVector.from_words(n, raw.view("<u8"))


def gen_uniform(n, density, seed):
    """Vector where each bit is one independently with probability density%."""
    rng = np.random.default_rng(seed)
    p = density / 100.0

    def chunks():
        done = 0
        while done < n:
            m = min(_GEN_CHUNK_BITS, n - done)
            yield rng.random(m) < p
            done += m

    return _pack_bits(n, chunks())


def gen_adversarial(n, density, seed):
    """Sparse-prefix / dense-suffix vector with ~density% ones overall."""
    rng = np.random.default_rng(seed)
    boundary = min(n, int(np.ceil(n * (100 - density) / 100.0)))
    total_ones = n * density / 100.0
    front, back = boundary, n - boundary
    p_front = min(1.0, 0.01 * total_ones / front) if front else 0.0
    p_back = min(1.0, 0.99 * total_ones / back) if back else 0.0
    if back == 0 and front:
        p_front = min(1.0, total_ones / front)

    def chunks():
        done = 0
        while done < n:
            m = min(_GEN_CHUNK_BITS, n - done)
            r = rng.random(m)
            idx = np.arange(done, done + m)
            yield np.where(idx < boundary, r < p_front, r < p_back)
            done += m

    return _pack_bits(n, chunks())


def gen_vector(spec, seed):
    if spec.distribution == "uniform":
        return gen_uniform(spec.n, spec.density, seed)
    return gen_adversarial(spec.n, spec.density, seed)


def gen_queries(spec, bv, seed):
    """Draw query arrays for every requested kind, in canonical kind order.

    Select ranks are drawn only over existing ranks; asking for select
    queries against a vector with no matching bits is an error.
    """
    rng = np.random.default_rng(seed)
    n = len(bv)
    ones = bv.count_ones()
    totals = {"select0": n - ones, "select1": ones}
    out = {}
    for kind in QUERY_KINDS:
        if kind not in spec.query_kinds:
            continue
        if kind.startswith("rank"):
            out[kind] = rng.integers(0, n + 1, size=spec.num_queries, dtype=np.int64)
        else:
            total = totals[kind]
            if total == 0:
                raise ValueError(f"cannot generate {kind} queries: no such bits in the vector")
            out[kind] = rng.integers(1, total + 1, size=spec.num_queries, dtype=np.int64)
    return QueryWorkload(spec=spec, seed=seed, queries=out)


def derive_run_seeds(master_seed, runs):
    """Per-run (vector_seed, query_seed) pairs derived from the master seed."""
    state = np.random.SeedSequence(master_seed).generate_state(2 * runs, dtype=np.uint64)
    return [(int(state[2 * r]), int(state[2 * r + 1])) for r in range(runs)]
