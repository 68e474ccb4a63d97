"""Compare the compiled and pure-Python kernels on the XDP forward pass.

    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --sizes 1000 10000 100000 --python-max 10000 --csv out.csv

Both backends run on identical sorted inputs; the script also checks they
return the same best profit.
"""

import argparse
import csv
import sys
import time

import numpy as np

from xdpknap import kernels
from xdpknap.instgen import TrialConfig, derive_seed, gen_random_trial
from xdpknap.xdp import bin_count


def best_of(fn, repeats):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 1_000, 10_000, 100_000])
    ap.add_argument("--python-max", type=int, default=10_000, help="largest n timed on the Python kernel")
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--csv", default=None)
    args = ap.parse_args(argv)

    names = kernels.available()
    if "cython" not in names:
        print("compiled kernels not built; timing the Python kernel only", file=sys.stderr)
    rows = []
    for n in args.sizes:
        inst = gen_random_trial(TrialConfig(n, derive_seed(args.seed, n)))
        order = np.argsort(-(inst.profits / inst.weights), kind="stable")
        p, w = inst.profits[order].copy(), inst.weights[order].copy()
        T = bin_count(n)
        row = {"n": n, "T": T}
        profits = {}
        for name in names:
            if name == "python" and n > args.python_max:
                row[f"{name}_s"] = ""
                continue
            kern = kernels.load(name)
            secs, out = best_of(lambda: kern.xdp_forward(p, w, inst.capacity, T), args.repeats)
            row[f"{name}_s"] = secs
            profits[name] = out[5]
        if len(set(profits.values())) > 1:
            raise SystemExit(f"backends disagree at n={n}: {profits}")
        if isinstance(row.get("cython_s"), float) and isinstance(row.get("python_s"), float):
            row["speedup"] = row["python_s"] / row["cython_s"]
        rows.append(row)
        cells = [f"{k}={v:.4g}" if isinstance(v, float) else f"{k}={v}" for k, v in row.items() if v != ""]
        print("  ".join(cells))

    if args.csv:
        cols = ["n", "T"] + [f"{name}_s" for name in names] + ["speedup"]
        with open(args.csv, "w", newline="") as fh:
            writer = csv.DictWriter(fh, cols, restval="")
            writer.writeheader()
            writer.writerows(rows)


if __name__ == "__main__":
    main()
