"""End-to-end acceptance checks, one test per criterion.

Each test records a one-line PASS/FAIL verdict with the measured numbers;
the lines are printed in a block at the end of the pytest run.
"""

import time
from dataclasses import replace

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from gossipnet import graph6
from gossipnet.cli import EXIT_OK, main
from gossipnet.experiment import RunConfig, run_curves, sweep_clustering, sweep_m, sweep_ols
from gossipnet.game import DEFAULT_PAYOFFS, new_state, step_gossip, step_vanilla
from gossipnet.graphs import Graph, complete_graph, cycle_graph, is_triangle_free, random_k_regular_connected
from gossipnet.oracle import exact_gossip_curves, exact_vanilla_curves

SEED = 0
RUNS = 1000
GRID = 0.2


def record(number, ok, detail):
    ACCEPTANCE_LINES.append(f"ACCEPTANCE {number} {'PASS' if ok else 'FAIL'}: {detail}")
    return ok


def fmt_r(x):
    return "none" if x is None else f"{x:.1f}"


@pytest.fixture(scope="module")
def enumerated(tmp_path_factory):
    path = tmp_path_factory.mktemp("acceptance") / "quartic10.g6"
    start = time.perf_counter()
    rc = main(["enumerate", "--n", "10", "--k", "4", "--out", str(path)])
    elapsed = time.perf_counter() - start
    return rc, path, elapsed


@pytest.fixture(scope="module")
def clustering_sweeps(quartic10):
    template = RunConfig(model="gossip", graph_source="fixed", runs=RUNS)
    out = {}
    for seed in (SEED, SEED + 1, SEED + 2):
        out[(seed, 1)] = sweep_clustering(quartic10, 1, replace(template, master_seed=seed))
    for m in (2, 3):
        out[(SEED, m)] = sweep_clustering(quartic10, m, replace(template, master_seed=SEED))
    return out


def test_criterion_01_enumeration_count(enumerated):
    rc, path, elapsed = enumerated
    lines = path.read_text().splitlines()
    ok = rc == EXIT_OK and len(lines) == 59 and elapsed < 120
    record(1, ok, f"enumerate --n 10 --k 4 wrote {len(lines)} graphs in {elapsed:.1f}s (need 59, under 120s)")
    assert ok


def test_criterion_02_chi_range(enumerated, tmp_path):
    _, path, _ = enumerated
    out = tmp_path / "chi.csv"
    assert main(["clustering", "--graphs", str(path), "--out", str(out)]) == EXIT_OK
    chis = [float(line.split(",")[1]) for line in out.read_text().splitlines()[1:]]
    lo, hi = min(chis), max(chis)
    ok = len(chis) == 59 and lo == 0.0 and 0.683 <= hi <= 0.717
    record(2, ok, f"chi min={lo:g} (need 0), max={hi:.6g} (need [0.683, 0.717])")
    assert ok


def test_criterion_03_vanilla_monotone_in_m():
    results = sweep_m(RunConfig(model="vanilla", runs=RUNS, master_seed=SEED), range(1, 7))
    r = [th.r_star for _, th in results]
    drops = [r[i] - r[i + 1] for i in range(5) if r[i] is not None and (r[i + 1] is None or r[i + 1] < r[i])]
    drops = [d for d in drops if d > 1e-9]
    # an absent threshold is infinitely late, which never breaks the ordering
    ok = len(drops) <= 1 and all(d <= GRID + 1e-9 for d in drops)
    record(3, ok, "vanilla r_star m=1..6: " + ", ".join(fmt_r(x) for x in r) + f"; violations={drops}")
    assert ok


def test_criterion_04_gossip_beats_vanilla():
    van = [th.r_star for _, th in sweep_m(RunConfig(model="vanilla", runs=RUNS, master_seed=SEED), range(1, 7))]
    cfg = RunConfig(model="gossip", graph_source="random", runs=RUNS, master_seed=SEED)
    gos = [th.r_star for _, th in sweep_m(cfg, range(1, 7))]
    inf = float("inf")
    v = [inf if x is None else x for x in van]
    g = [inf if x is None else x for x in gos]
    within = all(gi <= vi + GRID + 1e-9 for gi, vi in zip(g, v))
    strict = sum(gi < vi - 1e-9 for gi, vi in zip(g, v))
    ok = within and strict >= 3
    pairs = ", ".join(f"m={m}: {fmt_r(a)} vs {fmt_r(b)}" for m, a, b in zip(range(1, 7), gos, van))
    record(4, ok, f"gossip vs vanilla r_star {pairs}; strict improvements={strict}/6")
    assert ok


def test_criterion_05_clustering_lowers_threshold(clustering_sweeps):
    slopes = []
    for seed in (SEED, SEED + 1, SEED + 2):
        slopes.append(sweep_ols(clustering_sweeps[(seed, 1)]).slope)
    sign_ok = all(s < 0 for s in slopes)
    bad = []
    for seed in (SEED, SEED + 1, SEED + 2):
        for rec in clustering_sweeps[(seed, 1)]:
            r = rec.threshold.r_star
            if rec.chi >= 0.40 and (r is None or r >= 1.0):
                bad.append((seed, round(rec.chi, 4), r))
    high = [rec.threshold.r_star for rec in clustering_sweeps[(SEED, 1)] if rec.chi >= 0.40]
    ok = sign_ok and not bad
    record(
        5,
        ok,
        "slopes " + ", ".join(f"{s:+.4f}" for s in slopes)
        + f" (need all < 0); graphs with chi>=0.40 and r_star>=1: {len(bad)}"
        + f" (seed {SEED} r_star range {min(high):.1f}..{max(high):.1f}, need < 1.0)",
    )
    assert sign_ok, f"slopes {slopes}"
    assert not bad, f"{len(bad)} high-clustering graphs have r_star >= 1, e.g. {bad[:3]}"


def test_criterion_06_effect_wanes_with_m(clustering_sweeps):
    fits = {m: sweep_ols(clustering_sweeps[(SEED, m)]) for m in (1, 2, 3)}
    mags = [abs(fits[m].slope) for m in (1, 2, 3)]
    ok = mags[0] > mags[1] > mags[2]
    record(
        6,
        ok,
        "|slope| m=1,2,3: " + ", ".join(f"{x:.4f}" for x in mags)
        + " (need strictly decreasing); r2: " + ", ".join(f"{fits[m].r_squared:.3f}" for m in (1, 2, 3)),
    )
    assert ok


def _oracle_gap(curves, exact):
    worst = 0.0
    for mc_mean, mc_sem, ex in (
        (curves.coop_mean, curves.coop_sem, exact.coop_mean),
        (curves.cheat_mean, curves.cheat_sem, exact.cheat_mean),
    ):
        for t, value in enumerate(ex):
            if value is None:
                if not np.isnan(mc_mean[t]):
                    return float("inf")
                continue
            # exact zero-variance points only need floating-point agreement
            allowed = 3 * mc_sem[t] + 1e-12
            worst = max(worst, abs(mc_mean[t] - float(value)) / allowed)
    return worst


def test_criterion_07_oracle_equivalence():
    runs, steps = 100_000, 8
    cases = [
        ("vanilla n=4", RunConfig(model="vanilla", n=4, m=1, runs=runs, horizon_r=4.0, master_seed=SEED), None,
         exact_vanilla_curves(4, 1, steps, DEFAULT_PAYOFFS)),
        ("gossip K4", RunConfig(model="gossip", graph_source="fixed", n=4, m=1, runs=runs, horizon_r=4.0, master_seed=SEED),
         complete_graph(4), exact_gossip_curves(complete_graph(4), 1, steps, DEFAULT_PAYOFFS)),
        ("gossip C4", RunConfig(model="gossip", graph_source="fixed", n=4, m=1, runs=runs, horizon_r=4.0, master_seed=SEED),
         cycle_graph(4), exact_gossip_curves(cycle_graph(4), 1, steps, DEFAULT_PAYOFFS)),
    ]
    parts, ok = [], True
    for name, cfg, g, exact in cases:
        assert cfg.steps == steps
        gap = _oracle_gap(run_curves(cfg, g), exact)
        parts.append(f"{name} worst |error|/(3 SE)={gap:.3f}")
        ok &= gap <= 1.0
    collapse = exact_gossip_curves(cycle_graph(4), 1, steps, DEFAULT_PAYOFFS) == exact_vanilla_curves(
        4, 1, steps, DEFAULT_PAYOFFS, graph=cycle_graph(4)
    )
    parts.append(f"exact C4 gossip == exact C4 vanilla: {collapse}")
    ok &= collapse
    record(7, ok, "; ".join(parts))
    assert ok


def _triangle_free_suite():
    rng = np.random.default_rng(2718)
    suite = [cycle_graph(n) for n in (4, 5, 6, 9, 12)]
    suite.append(Graph.from_edges(10, [(i, (i + 1) % 5) for i in range(5)]
                                  + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
                                  + [(i, i + 5) for i in range(5)]))
    for a, b in [(3, 3), (4, 4), (5, 5), (2, 6)]:
        suite.append(Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)]))
    for n, k in [(10, 3), (12, 3), (10, 4), (14, 3)]:
        found = 0
        while found < 3:
            g = random_k_regular_connected(n, k, rng)
            if is_triangle_free(g):
                suite.append(g)
                found += 1
    for _ in range(6):
        # random bipartite graphs are triangle-free by construction
        n = int(rng.integers(6, 13))
        side = rng.random(n) < 0.5
        a = np.triu((rng.random((n, n)) < 0.5) & (side[:, None] != side[None, :]), 1)
        g = Graph(a | a.T)
        if g.edge_count:
            suite.append(g)
    return suite


def test_criterion_08_triangle_free_collapse():
    suite = _triangle_free_suite()
    assert all(is_triangle_free(g) for g in suite)
    events, mismatches = 0, 0
    for gi, g in enumerate(suite):
        n = g.node_count
        for m in range(0, n + 1, max(1, n // 4)):
            for seed in range(3):
                ra = np.random.default_rng([gi, m, seed])
                rb = np.random.default_rng([gi, m, seed])
                a = new_state(n, m, ra, record_history=True)
                b = new_state(n, m, rb, record_history=True)
                for _ in range(100):
                    step_gossip(a, g, DEFAULT_PAYOFFS, ra)
                    step_vanilla(b, DEFAULT_PAYOFFS, rb, pairs=g.edges)
                events += len(a.history)
                same = a.history == b.history and np.array_equal(a.beliefs, b.beliefs) and np.array_equal(
                    a.cumulative_payoff, b.cumulative_payoff
                )
                mismatches += not same
    ok = mismatches == 0
    record(8, ok, f"{len(suite)} triangle-free graphs, {events} events compared, {mismatches} diverging trajectories")
    assert ok


def test_criterion_09_cli_determinism(enumerated, tmp_path):
    _, g6, _ = enumerated
    commands = {
        "enumerate": ["enumerate", "--n", "8", "--k", "3"],
        "clustering": ["clustering", "--graphs", str(g6)],
        "threshold": ["threshold", "--model", "gossip", "--m", "2", "--runs", "500", "--horizon", "20", "--seed", "7"],
        "sweep-m": ["sweep-m", "--model", "both", "--m", "1-4", "--runs", "200", "--horizon", "30", "--seed", "7"],
        "sweep-clustering": ["sweep-clustering", "--graphs", str(g6), "--m", "1,2", "--runs", "100", "--horizon", "20",
                             "--seed", "7"],
    }
    differing = []
    for name, argv in commands.items():
        seen = set()
        for rep, threads in enumerate((1, 2, 8, 1)):
            out = tmp_path / f"{name}-{rep}.csv"
            assert main(argv + ["--threads", str(threads), "--out", str(out)]) == EXIT_OK
            seen.add((out.read_bytes(), out.with_name(out.name + ".json").read_bytes()))
        if len(seen) != 1:
            differing.append(name)
    ok = not differing
    record(9, ok, f"{len(commands)} subcommands at threads 1, 2, 8 and repeat; differing outputs: {differing or 'none'}")
    assert ok


def test_criterion_10_graph6_round_trip(quartic10):
    rng = np.random.default_rng(SEED)
    graphs = [e.graph for e in quartic10] + [random_k_regular_connected(10, 4, rng) for _ in range(1000)]
    failures = sum(graph6.decode(graph6.encode(g)) != g for g in graphs)
    ok = failures == 0
    record(10, ok, f"{len(graphs)} graphs round-tripped, {failures} failures")
    assert ok
