"""How the clustering slope changes as cheaters become more common.

The same seed schedule is used for every m, so differences between the
fitted slopes come from m and not from fresh noise.
"""

import argparse

from gossipnet import RunConfig, enumerate_k_regular_connected, sweep_clustering, sweep_ols

parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
parser.add_argument("--runs", type=int, default=1000)
parser.add_argument("--seed", type=int, default=0)
parser.add_argument("--max-m", type=int, default=5)
args = parser.parse_args()

entries = enumerate_k_regular_connected(10, 4)
cfg = RunConfig(model="gossip", graph_source="fixed", runs=args.runs, master_seed=args.seed)

print(" m   slope   intercept    r^2")
for m in range(1, args.max_m + 1):
    fit = sweep_ols(sweep_clustering(entries, m, cfg))
    print(f"{m:2d}  {fit.slope:+.3f}   {fit.intercept:7.3f}   {fit.r_squared:.3f}")
