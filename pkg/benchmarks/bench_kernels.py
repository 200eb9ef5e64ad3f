"""Compare the compiled and pure-Python kernels on representative workloads.

    python benchmarks/bench_kernels.py [--repeat 5] [--json]
"""

import argparse
import json
import sys
import timeit
from itertools import combinations

from puiseux_lengths import kernels
from puiseux_lengths.kernels import list_to_bits


def _realize_sweep(impl):
    # the inner loop of realize() for S = {2, 4, 8}, which needs three atoms
    target = list_to_bits([2, 4, 8])
    for k in (2, 3):
        for atoms in combinations(range(2, 21), k):
            impl.find_realizing_element(list(atoms), target, 8, 400)


WORKLOADS = {
    "length_table <6,9,20> to 2000": lambda impl: impl.length_table([6, 9, 20], 2000),
    "length_bits <7,11,13,17> at 20000": lambda impl: impl.length_bits([7, 11, 13, 17], 20000),
    "length_bits <3,5> at 100000": lambda impl: impl.length_bits([3, 5], 100000),
    "realization sweep for {2,4,8}": _realize_sweep,
}


def bench(repeat):
    rows = []
    for name, work in WORKLOADS.items():
        row = {"workload": name}
        for backend, impl in sorted(kernels.backends().items()):
            row[backend] = min(timeit.repeat(lambda: work(impl), number=1, repeat=repeat))
        if "cython" in row:
            row["speedup"] = row["python"] / row["cython"]
        rows.append(row)
    return rows


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5, help="best of this many runs")
    parser.add_argument("--json", action="store_true", help="print rows as JSON")
    args = parser.parse_args(argv)
    if "cython" not in kernels.backends():
        print("compiled kernel not built; only the Python backend is timed", file=sys.stderr)
    rows = bench(args.repeat)
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'workload':<40}{'python s':>12}{'cython s':>12}{'speedup':>10}")
    for r in rows:
        cy = f"{r['cython']:12.4f}" if "cython" in r else f"{'-':>12}"
        sp = f"{r['speedup']:9.1f}x" if "speedup" in r else f"{'-':>10}"
        print(f"{r['workload']:<40}{r['python']:12.4f}{cy}{sp}")


if __name__ == "__main__":
    main()
