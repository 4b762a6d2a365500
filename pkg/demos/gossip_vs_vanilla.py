"""Does gossip on a network make cheating stop paying sooner?

With gossip, agents sit on a random connected 4-regular graph, meet only
their neighbours, and refuse to trust a partner when enough trusted friends
already have it down as a cheater. Compare thresholds against the
no-gossip, meet-anyone game for each number of cheaters.
"""

import argparse

from gossipnet import RunConfig, sweep_m

parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
parser.add_argument("--runs", type=int, default=1000)
parser.add_argument("--seed", type=int, default=0)
args = parser.parse_args()

ms = range(1, 10)
van = sweep_m(RunConfig(model="vanilla", runs=args.runs, master_seed=args.seed), ms)
gos = sweep_m(RunConfig(model="gossip", graph_source="random", runs=args.runs, master_seed=args.seed), ms)


def show(th):
    return "   -" if th.r_star is None else f"{th.r_star:4.1f}"


print(" m  vanilla  gossip")
for (m, v), (_, g) in zip(van, gos):
    print(f"{m:2d}   {show(v)}    {show(g)}")
print("'-' means cooperators never catch up within 50 plays per agent")
