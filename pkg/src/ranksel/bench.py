"""Benchmark runner: timing, space accounting, CSV reporting.

Per run: build a fresh vector and fresh queries from per-run derived
seeds, construct each structure, then time every query kind as one batch
phase on a monotonic clock (whole-phase wall time divided by query count;
no per-query timing).  A wrapping 64-bit sum of the query results is kept
as a checksum: it defeats dead-code elimination in the compiled backend
and doubles as a cross-structure correctness check, since every structure
must answer the same workload identically.

Space is measured by explicit accounting (exact byte footprint of the
index arrays, excluding the bit vector) rather than allocator tricks.

Everything is sequential; nothing runs concurrently inside a timed phase.
"""

import csv
import time
from dataclasses import dataclass

import numpy as np

from . import _backend
from .flat import FlatIndex, SearchStrategy
from .poppy import PoppyIndex
from .wide import WideIndex
from .workload import QUERY_KINDS, derive_run_seeds, gen_queries, gen_vector

def _build_poppy(bv, samples, with_l0):
    return PoppyIndex(bv, samples=samples)


def _build_flat(bv, samples, with_l0):
    return FlatIndex(bv, with_l0=with_l0, samples=samples)


def _build_wide(bv, samples, with_l0):
    return WideIndex(bv, samples=samples)


_BUILDERS = {"poppy": _build_poppy, "flat": _build_flat, "wide": _build_wide}

STRUCTURES = ("poppy", "flat", "wide")


def register_structure(name, builder):
    """Adapter seam for benchmarking external rank/select implementations.

    ``builder(bv, samples, with_l0)`` must return an object with the query
    surface the runner drives: ``rank0_batch(positions)``,
    ``rank1_batch(positions)``, ``select_batch(alpha, ranks[, strategy])``
    (batches of int64 in, uint64 positions/counts out), ``space_bytes()``,
    and an optional ``supports_select_strategies`` attribute.  No adapters
    ship with this package.
    """
    _BUILDERS[str(name)] = builder


def known_structures():
    return tuple(_BUILDERS)

CSV_COLUMNS = (
    "structure",
    "strategy",
    "query_kind",
    "n",
    "density",
    "distribution",
    "construction_seconds",
    "ns_per_query",
    "index_bytes",
    "overhead_percent",
    "seed",
    "run_id",
    "checksum",
)

# construction below roughly this rate deserves a look (soft sanity bound)
MIN_CONSTRUCTION_GIB_S = 1.0


@dataclass
class BenchRecord:
    """One CSV row: a (structure, strategy, query kind) cell of one run."""

    structure: str
    strategy: str
    query_kind: str
    n: int
    density: float
    distribution: str
    construction_seconds: float
    ns_per_query: float
    index_bytes: int
    overhead_percent: float
    seed: int
    run_id: str
    checksum: str

    def row(self):
        return (
            self.structure,
            self.strategy,
            self.query_kind,
            str(self.n),
            f"{self.density:g}",
            self.distribution,
            f"{self.construction_seconds:.6f}",
            f"{self.ns_per_query:.3f}",
            str(self.index_bytes),
            f"{self.overhead_percent:.6f}",
            str(self.seed),
            self.run_id,
            self.checksum,
        )


def measure_space(index):
    """Exact index footprint in bytes, excluding the bit vector itself."""
    return index.space_bytes()


def _build_structure(name, bv, samples, with_l0):
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise ValueError(
            f"unknown structure {name!r} (valid: {', '.join(known_structures())})"
        ) from None
    return builder(bv, samples, with_l0)


def _checksum(values):
    return int(np.add.reduce(values, dtype=np.uint64)) if len(values) else 0


def _timed_batch(fn, queries):
    t0 = time.perf_counter()
    out = fn(queries)
    dt = time.perf_counter() - t0
    return dt, _checksum(out)


def _query_cells(index, workload, strategies):
    """Yield (strategy_label, kind, seconds, checksum) for every CSV cell.

    Rank kinds do not depend on a search strategy, so they get a single
    '-' row; select kinds get one row per strategy for the structures that
    support strategy selection.
    """
    for kind in QUERY_KINDS:
        if kind not in workload.queries:
            continue
        queries = workload[kind]
        if kind == "rank0":
            yield "-", kind, *_timed_batch(index.rank0_batch, queries)
        elif kind == "rank1":
            yield "-", kind, *_timed_batch(index.rank1_batch, queries)
        else:
            alpha = 1 if kind == "select1" else 0
            if getattr(index, "supports_select_strategies", False):
                for strategy in strategies:
                    yield (
                        strategy.short_name,
                        kind,
                        *_timed_batch(lambda q: index.select_batch(alpha, q, strategy), queries),
                    )
            else:
                yield "-", kind, *_timed_batch(lambda q: index.select_batch(alpha, q), queries)


def run_benchmark(spec, structures, runs=3, strategies=(SearchStrategy.PARALLEL_COMPARE,),
                  samples="ones", with_l0=False, backend=None, log=None):
    """Full benchmark: list of per-run BenchRecords plus mean rows."""
    for name in structures:
        if name not in _BUILDERS:
            raise ValueError(
                f"unknown structure {name!r} (valid: {', '.join(known_structures())})"
            )
    strategies = tuple(SearchStrategy.parse(s) for s in strategies)

    records = []
    seeds = derive_run_seeds(spec.seed, runs)
    with _backend.using(backend if backend else _backend.name()):
        for run, (vec_seed, query_seed) in enumerate(seeds):
            if log:
                print(f"run {run}: generating n={spec.n} {spec.distribution} "
                      f"density={spec.density:g}%", file=log, flush=True)
            bv = gen_vector(spec, vec_seed)
            workload = gen_queries(spec, bv, query_seed)
            for name in structures:
                t0 = time.perf_counter()
                index = _build_structure(name, bv, samples, with_l0)
                build_seconds = time.perf_counter() - t0
                index_bytes = measure_space(index)
                overhead = 100.0 * index_bytes * 8 / spec.n
                if log:
                    gib_s = spec.n / 8 / max(build_seconds, 1e-12) / (1 << 30)
                    print(f"run {run}: built {name} in {build_seconds:.3f}s "
                          f"({gib_s:.2f} GiB/s), {index_bytes} bytes "
                          f"({overhead:.3f}%)", file=log, flush=True)
                for strategy_label, kind, seconds, checksum in _query_cells(
                    index, workload, strategies
                ):
                    nq = spec.num_queries
                    records.append(BenchRecord(
                        structure=name,
                        strategy=strategy_label,
                        query_kind=kind,
                        n=spec.n,
                        density=spec.density,
                        distribution=spec.distribution,
                        construction_seconds=build_seconds,
                        ns_per_query=(seconds * 1e9 / nq) if nq else 0.0,
                        index_bytes=index_bytes,
                        overhead_percent=overhead,
                        seed=spec.seed,
                        run_id=str(run),
                        checksum=str(checksum),
                    ))

    records.extend(_mean_records(records))
    return records


def _mean_records(records):
    """One aggregate row per (structure, strategy, kind), averaged over runs."""
    groups = {}
    for rec in records:
        groups.setdefault((rec.structure, rec.strategy, rec.query_kind), []).append(rec)
    means = []
    for (structure, strategy, kind), group in groups.items():
        first = group[0]
        means.append(BenchRecord(
            structure=structure,
            strategy=strategy,
            query_kind=kind,
            n=first.n,
            density=first.density,
            distribution=first.distribution,
            construction_seconds=sum(r.construction_seconds for r in group) / len(group),
            ns_per_query=sum(r.ns_per_query for r in group) / len(group),
            index_bytes=first.index_bytes,
            overhead_percent=first.overhead_percent,
            seed=first.seed,
            run_id="mean",
            checksum="",
        ))
    return means


def write_csv(records, file):
    if not hasattr(file, "write"):
        with open(file, "w", newline="", encoding="utf-8") as f:
            write_csv(records, f)
        return
    writer = csv.writer(file, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow(rec.row())


def construction_warnings(records):
    """Soft sanity check: flag builds slower than ~1 GiB/s of vector data."""
    warnings = []
    seen = set()
    for rec in records:
        key = (rec.structure, rec.run_id)
        if rec.run_id == "mean" or key in seen:
            continue
        seen.add(key)
        gib_s = rec.n / 8 / max(rec.construction_seconds, 1e-12) / (1 << 30)
        if gib_s < MIN_CONSTRUCTION_GIB_S:
            warnings.append(
                f"construction of {rec.structure} (run {rec.run_id}) ran at "
                f"{gib_s:.2f} GiB/s, below the {MIN_CONSTRUCTION_GIB_S:.0f} GiB/s sanity bound"
            )
    return warnings


def check_cross_structure_checksums(records):
    """Checksums for one (run, kind) must agree across structures/strategies."""
    groups = {}
    for rec in records:
        if rec.run_id == "mean":
            continue
        groups.setdefault((rec.run_id, rec.query_kind), set()).add(rec.checksum)
    bad = [key for key, sums in groups.items() if len(sums) != 1]
    return sorted(bad)
