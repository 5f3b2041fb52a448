"""Compare the compiled kernel extension against the pure-Python fallback.

Runs the same workload through both backends and prints per-query times
side by side, plus construction rates and the two in-word select paths of
the compiled backend when the CPU supports both.  Checksums are asserted
equal across backends, so this doubles as an end-to-end agreement check.

Usage:
    python benchmarks/compare_backends.py [--size BITS] [--queries N] [--seed S]
"""

import argparse
import sys
import time

import numpy as np

from ranksel import _backend
from ranksel.bench import run_benchmark
from ranksel.workload import WorkloadSpec


def bench_word_select(queries=2_000_000, seed=9):
    """Time the broadword and bit-deposit in-word select paths."""
    with _backend.using("compiled"):
        kern = _backend.kernels
        if not kern.HAS_PDEP:
            print("in-word select: no bit-deposit instruction on this CPU")
            return
        rng = np.random.default_rng(seed)
        words = rng.integers(1, 1 << 64, queries, dtype=np.uint64)
        ranks = [1 + (int(w) % int(w).bit_count()) for w in words]
        pairs = list(zip((int(w) for w in words), ranks))
        for label, fn in (("portable (broadword)", kern.select_in_word_portable),
                          ("pdep", kern.select_in_word_pdep)):
            t0 = time.perf_counter()
            acc = 0
            for w, j in pairs:
                acc += fn(w, j)
            dt = time.perf_counter() - t0
            print(f"  in-word select, {label:21s}: "
                  f"{dt * 1e9 / queries:7.1f} ns/query (checksum {acc})")


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=1 << 24)
    parser.add_argument("--queries", type=int, default=200_000)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args(argv)

    backends = _backend.available()
    if "compiled" not in backends:
        print("warning: compiled kernels not built, showing pure backend only",
              file=sys.stderr)

    spec = WorkloadSpec(n=args.size, density=50.0, distribution="uniform",
                        num_queries=args.queries, seed=args.seed)
    results = {}
    for backend in backends:
        print(f"running {backend} backend ...", file=sys.stderr, flush=True)
        records = run_benchmark(spec, ["poppy", "flat", "wide"], runs=1,
                                strategies=("parallel",), samples="both",
                                backend=backend)
        results[backend] = {
            (r.structure, r.strategy, r.query_kind): r
            for r in records if r.run_id == "0"
        }

    if len(backends) == 2:
        keys_c = {k: r.checksum for k, r in results["compiled"].items()}
        keys_p = {k: r.checksum for k, r in results["pure"].items()}
        assert keys_c == keys_p, "backends disagree on query results"
        print("checksums: compiled == pure for every (structure, kind)")

    print(f"\nn = {args.size} bits, {args.queries} queries per kind, "
          f"uniform 50% density, seed {args.seed}")
    header = f"{'cell':34s}" + "".join(f"{b:>16s}" for b in backends)
    print(header)
    print("-" * len(header))
    for key in sorted(results[backends[0]]):
        cell = " ".join(key)
        row = f"{cell:34s}"
        for backend in backends:
            row += f"{results[backend][key].ns_per_query:13.1f} ns"
        print(row)
    print()
    for backend in backends:
        any_rec = next(iter(results[backend].values()))
        gib_s = args.size / 8 / max(any_rec.construction_seconds, 1e-12) / (1 << 30)
        print(f"construction ({backend:8s}): {any_rec.construction_seconds * 1e3:8.2f} ms "
              f"({gib_s:5.2f} GiB/s) for the first structure")

    if "compiled" in backends:
        print()
        bench_word_select(min(args.queries, 2_000_000))
    return 0


if __name__ == "__main__":
    sys.exit(main())
