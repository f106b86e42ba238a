"""Compare the compiled and pure-Python kernels on generated texts.

    python benchmarks/bench_backends.py [--length N] [--repeat R] [--csv]

Prints one row per (text, algorithm, backend) and the compiled/python
speedup per algorithm. Exits non-zero if the extension is not built.
"""

import argparse
import sys
from collections import defaultdict

from rlematch import bench, matchers

CONFIGS = [
    # (sigma, mean run, pattern length, max rho)
    (2, 16.0, 512, 64),
    (4, 8.0, 128, None),
    (16, 2.0, 64, None),
    (2, 4.0, 300, None),  # rows span two words
]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--length", type=int, default=1_000_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--csv", action="store_true", help="emit CSV instead of a table")
    args = ap.parse_args(argv)
    if "compiled" not in matchers.BACKENDS:
        print("compiled backend unavailable; build the extension first", file=sys.stderr)
        return 2

    reports = []
    for sigma, mean_run, m, max_rho in CONFIGS:
        spec = bench.GenSpec(sigma, args.length, mean_run, bench.GEOMETRIC, args.seed)
        rule = bench.PatternRule(length=m, max_rho=max_rho, seed=args.seed + 1)
        reports += bench.run_benchmark([spec], rule, backends=["compiled", "python"], repeat=args.repeat)

    if args.csv:
        sys.stdout.write(bench.format_csv(reports))
        return 0
    print(bench.format_table(reports))
    print()
    speed = defaultdict(dict)
    for r in reports:
        speed[(r.algorithm, r.m, r.rho)][r.backend] = r.wall_s
    print("compiled speedup over python:")
    for (algo, m, rho), t in speed.items():
        print(f"  {algo:>13}  m={m:<4} rho={rho:<4} x{t['python'] / t['compiled']:.1f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
