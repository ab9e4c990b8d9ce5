"""Runtime of the four miners as the number of transactions grows.

Writes a CSV (transactions, algorithm, itemsets, seconds) and, with --plot,
a line chart. Timings are hardware dependent; only relative shapes matter.

    python scripts/bench_mining.py --sizes 100 250 500 1000 2000 --out bench.csv
"""

import argparse
import csv
import random
import sys
import time

from ctxcat.mining import ALGORITHMS, MiningParams, mine
from ctxcat.synthetic import zipf_database


def run(sizes, repeats, seed, params_kw):
    rows = []
    for n in sizes:
        db = zipf_database(random.Random(seed), n)
        for algorithm in ALGORITHMS:
            params = MiningParams(algorithm=algorithm, **params_kw)
            best = float("inf")
            for _ in range(repeats):
                t0 = time.perf_counter()
                fis = mine(db, params)
                best = min(best, time.perf_counter() - t0)
            rows.append({"transactions": n, "algorithm": algorithm, "itemsets": len(fis), "seconds": best})
            print(f"{n:>6} {algorithm:<10} {len(fis):>6} itemsets {best:.4f}s", file=sys.stderr)
    return rows


def plot(rows, path):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    for algorithm in ALGORITHMS:
        pts = [(r["transactions"], r["seconds"]) for r in rows if r["algorithm"] == algorithm]
        ax.plot(*zip(*pts), marker="o", label=algorithm)
    ax.set_xlabel("transactions")
    ax.set_ylabel("seconds")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 250, 500, 1000, 2000])
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--min-support", type=float, default=0.05)
    ap.add_argument("--out", default="bench.csv")
    ap.add_argument("--plot", help="optional PNG path")
    args = ap.parse_args()

    rows = run(args.sizes, args.repeats, args.seed, {"min_support": args.min_support})
    with open(args.out, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=["transactions", "algorithm", "itemsets", "seconds"])
        writer.writeheader()
        writer.writerows(rows)
    if args.plot:
        plot(rows, args.plot)


if __name__ == "__main__":
    main()
