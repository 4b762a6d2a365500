"""Threshold against clustering with one cheater, over all 59 graphs.

The cheater is placed at random in every run; each graph gets its own
threshold and a least-squares line is fitted through the cloud.
"""

import argparse

from gossipnet import RunConfig, enumerate_k_regular_connected, sweep_clustering, sweep_ols

parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
parser.add_argument("--runs", type=int, default=1000)
parser.add_argument("--seed", type=int, default=0)
args = parser.parse_args()

entries = enumerate_k_regular_connected(10, 4)
cfg = RunConfig(model="gossip", graph_source="fixed", runs=args.runs, master_seed=args.seed)
records = sweep_clustering(entries, 1, cfg)

for rec in sorted(records, key=lambda r: r.chi):
    r = rec.threshold.r_star
    print(f"{rec.graph_id}  chi={rec.chi:.3f}  r*={'-' if r is None else f'{r:.1f}'}")

fit = sweep_ols(records)
print(f"fit: r* = {fit.intercept:.3f} {fit.slope:+.3f} * chi   (r^2 = {fit.r_squared:.3f}, {fit.n_excluded} excluded)")
