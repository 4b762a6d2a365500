"""Everyone meets everyone, nobody talks.

Ten agents play a repeated prisoner's dilemma with random partners. A
cooperator cooperates until a partner cheats on it, then never trusts that
partner again. This script prints the average per-interaction payoff of each
type as play goes on, and where (if anywhere) cooperating starts to pay.
"""

import argparse

from gossipnet import RunConfig, run_curves, threshold_from_curves

parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
parser.add_argument("--runs", type=int, default=1000)
parser.add_argument("--seed", type=int, default=0)
args = parser.parse_args()

for m in (1, 3, 5):
    cfg = RunConfig(model="vanilla", m=m, runs=args.runs, master_seed=args.seed)
    curves = run_curves(cfg)
    th = threshold_from_curves(curves)
    print(f"m={m} cheaters")
    # every 5 plays per agent is enough to see the shape
    for t in range(24, cfg.steps, 25):
        print(f"  r={curves.r[t]:5.1f}  cooperator {curves.coop_mean[t]:+.3f}  cheater {curves.cheat_mean[t]:+.3f}")
    print("  cooperation pays from r =", "never (within horizon)" if th.r_star is None else f"{th.r_star:.1f}")
