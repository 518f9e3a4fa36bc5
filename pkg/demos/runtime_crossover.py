"""Pairwise vs global fill time across density and label alphabet size.

The global scheme walks every address of the dataset for every pair, so it
pays for a large address set. The pairwise scheme only touches what the
product graph of a pair contains, so it pays for dense, label-poor graphs.
Small alphabets and low density favor global; the opposite corner favors
pairwise.

    python3 demos/runtime_crossover.py            # about 30 s
    python3 demos/runtime_crossover.py --quick   # too small to show the trend
"""
import argparse
import sys

from npkernel import KernelConfig
from npkernel.bench import bench_grid, write_rows

parser = argparse.ArgumentParser()
parser.add_argument("--quick", action="store_true", help="10 graphs of 30 nodes instead of 30 of 60")
args = parser.parse_args()

n_graphs, n_nodes = (10, 30) if args.quick else (30, 60)
rows = bench_grid((0.1, 0.2, 0.3, 0.4), (2, 3, 4), n_graphs, n_nodes, seed=0, config=KernelConfig(h=1), repeats=3)
write_rows(rows, sys.stdout)

low = min(rows, key=lambda r: r["lambda"])
high = max(rows, key=lambda r: r["lambda"])
for tag, r in (("smallest", low), ("largest", high)):
    winner = "global" if r["t_global"] < r["t_pairwise"] else "pairwise"
    print(f"# {tag} address set ({r['lambda']}): {winner} is faster", file=sys.stderr)
