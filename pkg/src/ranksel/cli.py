"""Command line benchmark driver (``ranksel-bench``).

Generates a workload, times construction and queries for the requested
structures, and emits one CSV row per (structure, strategy, query kind)
per run plus a mean row.  The CSV goes to --csv PATH or to stdout;
progress and warnings go to stderr.  Exit code 0 on success, nonzero with
a diagnostic on any error.
"""

import argparse
import sys

from . import _backend
from .bench import (
    STRUCTURES,
    check_cross_structure_checksums,
    construction_warnings,
    run_benchmark,
    write_csv,
)
from .workload import QUERY_KINDS, WorkloadSpec


def _parse_bool(value):
    lowered = str(value).lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {value!r}")


def _parse_list(value, valid, what):
    items = [item.strip() for item in value.split(",") if item.strip()]
    if not items:
        raise argparse.ArgumentTypeError(f"empty {what} list")
    for item in items:
        if item not in valid:
            raise argparse.ArgumentTypeError(
                f"unknown {what} {item!r} (valid: {', '.join(valid)})"
            )
    return items


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ranksel-bench",
        description="Benchmark rank/select structures on generated bit vectors.",
    )
    parser.add_argument("--size", type=int, default=1 << 24, metavar="BITS",
                        help="vector length in bits (default: 2^24)")
    parser.add_argument("--density", type=float, default=50.0, metavar="PCT",
                        help="percentage of ones, in (0, 100) (default: 50)")
    parser.add_argument("--distribution", choices=("uniform", "adversarial"),
                        default="uniform")
    parser.add_argument("--structures", default="poppy,flat,wide", metavar="LIST",
                        type=lambda v: _parse_list(v, STRUCTURES, "structure"))
    parser.add_argument("--strategies", default="parallel", metavar="LIST",
                        type=lambda v: _parse_list(v, ("linear", "binary", "parallel"),
                                                   "strategy"))
    parser.add_argument("--queries", type=int, default=1_000_000, metavar="N",
                        help="queries per kind per run (default: 10^6)")
    parser.add_argument("--query-kinds", default=",".join(QUERY_KINDS), metavar="LIST",
                        type=lambda v: _parse_list(v, QUERY_KINDS, "query kind"))
    parser.add_argument("--runs", type=int, default=3, metavar="N")
    parser.add_argument("--seed", type=int, default=42, metavar="S")
    parser.add_argument("--csv", default=None, metavar="PATH",
                        help="write the CSV here instead of stdout")
    parser.add_argument("--samples", choices=("ones", "zeros", "both", "none"),
                        default="ones",
                        help="which select samples the indexes store (default: ones)")
    parser.add_argument("--with-l0", type=_parse_bool, default=False, metavar="BOOL",
                        help="build the flat index with its top-level block array")
    parser.add_argument("--backend", choices=("auto", "compiled", "pure"),
                        default="auto", help="kernel backend to benchmark")
    parser.add_argument("--quiet", action="store_true",
                        help="suppress progress output on stderr")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    log = None if args.quiet else sys.stderr

    try:
        spec = WorkloadSpec(
            n=args.size,
            density=args.density,
            distribution=args.distribution,
            num_queries=args.queries,
            seed=args.seed,
            query_kinds=tuple(args.query_kinds),
        )
        if args.backend != "auto":
            _backend.use(args.backend)
        if log:
            print(f"backend: {_backend.name()}", file=log, flush=True)
        records = run_benchmark(
            spec,
            structures=args.structures,
            runs=args.runs,
            strategies=args.strategies,
            samples=args.samples,
            with_l0=args.with_l0,
            log=log,
        )
    except (ValueError, RuntimeError) as exc:
        print(f"ranksel-bench: error: {exc}", file=sys.stderr)
        return 1

    mismatched = check_cross_structure_checksums(records)
    for warning in construction_warnings(records):
        print(f"ranksel-bench: warning: {warning}", file=sys.stderr)
    if mismatched:
        print(f"ranksel-bench: error: result checksums disagree across structures "
              f"for (run, kind): {mismatched}", file=sys.stderr)
        return 1

    if args.csv:
        write_csv(records, args.csv)
    else:
        write_csv(records, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
