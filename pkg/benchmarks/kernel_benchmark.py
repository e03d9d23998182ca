#!/usr/bin/env python3
"""Compare the compiled and pure-Python search kernels on seeded instances.

Prints a table of per-case timings plus the parity check (both backends
must return identical optima and witnesses). Equivalent data is available
as JSON via `vbplab bench kernels`.
"""

import argparse
import sys

from vbplab.benchmark import run_kernel_benchmark


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeats", type=int, default=3, help="timing repeats, best kept")
    ap.add_argument(
        "--coloring-sizes", type=int, nargs="+", default=[30, 38, 42], metavar="N"
    )
    ap.add_argument(
        "--packing-sizes", type=int, nargs="+", default=[20, 24, 28], metavar="N"
    )
    args = ap.parse_args(argv)

    report = run_kernel_benchmark(
        seed=args.seed,
        repeats=args.repeats,
        coloring_sizes=tuple(args.coloring_sizes),
        packing_sizes=tuple(args.packing_sizes),
    )
    print(f"selected backend: {report['backend_selected']}")
    if not report["compiled_available"]:
        print("compiled extension not available; timing pure-Python kernels only")
    header = f"{'kind':9s} {'case':26s} {'opt':>4s} {'pure':>10s} {'compiled':>10s} {'speedup':>8s}"
    print(header)
    print("-" * len(header))
    for case in report["cases"]:
        t = case["timing"]
        compiled = f"{t['compiled_seconds']:.4f}s" if t["compiled_seconds"] is not None else "-"
        speedup = f"{t['speedup']:.1f}x" if t["speedup"] is not None else "-"
        print(
            f"{case['kind']:9s} {case['label']:26s} {case['optimum']:4d} "
            f"{t['pure_seconds']:9.4f}s {compiled:>10s} {speedup:>8s}"
        )
    if not report["all_agree"]:
        print("BACKEND MISMATCH: compiled and pure kernels disagreed", file=sys.stderr)
        return 1
    print("backends agree on every optimum and witness")
    return 0


if __name__ == "__main__":
    sys.exit(main())
