"""Monte Carlo harness: payoff curves, cooperation thresholds, sweeps, regression.

Runs are simulated in blocks with the run index as the leading array axis.
Each run owns a random stream derived from ``(master_seed, run_index)`` and
draws, in this order: the cheater set, the random graph (if any), and the
whole sequence of pair indices. Drawing the pair indices in one call gives
the same numbers as drawing them one per step, so any single run can be
replayed exactly with the scalar functions in :mod:`gossipnet.game`.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from .canon import GraphSetEntry
from .errors import DegenerateRegressionError, InvalidParameterError
from .game import DEFAULT_PAYOFFS, PayoffMatrix, all_pairs
from .graphs import Graph, random_k_regular_connected

MODELS = ("vanilla", "gossip")
GRAPH_SOURCES = ("complete", "random", "fixed")


def seed_schedule(master_seed: int, run_index: int) -> np.random.Generator:
    """Independent stream for one run, a function of ``(master_seed, run_index)`` only."""
    seq = np.random.SeedSequence(master_seed, spawn_key=(run_index,))
    return np.random.Generator(np.random.PCG64(seq))


@dataclass(frozen=True)
class RunConfig:
    """One Monte Carlo configuration.

    ``graph_source`` is ``"complete"`` (everyone may meet everyone),
    ``"random"`` (a fresh connected k-regular graph per run) or ``"fixed"``
    (a graph passed to :func:`run_curves`). The vanilla rule on a random or
    fixed graph is edge-restricted vanilla; gossip needs a graph.
    """

    model: str = "vanilla"
    n: int = 10
    k: int = 4
    m: int = 1
    payoffs: PayoffMatrix = DEFAULT_PAYOFFS
    horizon_r: float = 50.0
    runs: int = 1000
    master_seed: int = 0
    graph_source: str = "complete"

    def __post_init__(self):
        if self.model not in MODELS:
            raise InvalidParameterError(f"model must be one of {MODELS}, got {self.model!r}")
        if self.graph_source not in GRAPH_SOURCES:
            raise InvalidParameterError(f"graph_source must be one of {GRAPH_SOURCES}, got {self.graph_source!r}")
        if self.model == "gossip" and self.graph_source == "complete":
            raise InvalidParameterError("the gossip model needs a random or fixed graph")
        if self.n < 2:
            raise InvalidParameterError(f"need n >= 2, got {self.n}")
        if not 0 <= self.m <= self.n:
            raise InvalidParameterError(f"m must lie in 0..{self.n}, got {self.m}")
        if not self.horizon_r > 0:
            raise InvalidParameterError(f"horizon_r must be positive, got {self.horizon_r}")
        if self.runs < 1:
            raise InvalidParameterError(f"runs must be >= 1, got {self.runs}")

    @property
    def steps(self) -> int:
        return math.ceil(Fraction(str(self.horizon_r)) * self.n / 2)


@dataclass(frozen=True)
class PayoffCurves:
    """Run-averaged per-interaction payoffs after each step.

    Undefined points are NaN; ``*_defined`` counts the runs that contributed
    at each step and ``*_sem`` is the standard error over those runs.
    """

    n: int
    r: np.ndarray
    coop_mean: np.ndarray
    cheat_mean: np.ndarray
    coop_sem: np.ndarray
    cheat_sem: np.ndarray
    coop_defined: np.ndarray
    cheat_defined: np.ndarray


@dataclass(frozen=True)
class ThresholdResult:
    r_star: float | None
    step: int | None = None

    @property
    def found(self) -> bool:
        return self.r_star is not None


@dataclass(frozen=True)
class SweepRecord:
    graph_id: str
    chi: float
    m: int
    threshold: ThresholdResult


@dataclass(frozen=True)
class OlsFit:
    slope: float
    intercept: float
    r_squared: float
    n_points: int = 0
    n_excluded: int = field(default=0)


def _type_means(cheater, cum, cnt):
    played = cnt > 0
    ratio = cum / np.where(played, cnt, 1)
    out = []
    for mask in (~cheater & played, cheater & played):
        count = mask.sum(axis=1)
        with np.errstate(invalid="ignore", divide="ignore"):
            out.append((ratio * mask).sum(axis=1) / count)
    return out


def simulate_block(cheater, pair_i, pair_j, payoffs: PayoffMatrix, adjacency=None):
    """Vectorised simulation of a block of independent runs.

    ``cheater`` is ``(R, n)``; ``pair_i``/``pair_j`` are ``(R, T)`` agent
    indices per step; ``adjacency`` is ``(R, n, n)`` (or broadcastable) and
    switches on the gossip rule. Returns ``(coop, cheat)``, each ``(R, T)``
    with NaN where a type has not played yet.
    """
    R, n = cheater.shape
    T = pair_i.shape[1]
    rows = np.arange(R)
    beliefs = np.zeros((R, n, n), dtype=bool)
    cum = np.zeros((R, n))
    cnt = np.zeros((R, n), dtype=np.int64)
    table = payoffs.table()
    coop = np.empty((R, T))
    cheat = np.empty((R, T))
    if adjacency is not None:
        adjacency = np.broadcast_to(adjacency, (R, n, n))
        deg1 = adjacency.sum(axis=2) + 1

    for t in range(T):
        i = pair_i[:, t]
        j = pair_j[:, t]
        exp_i = beliefs[rows, i, j]
        exp_j = beliefs[rows, j, i]
        if adjacency is not None:
            # trusted friends of i (believed cooperators) who already believe j cheats
            votes_i = (adjacency[rows, i] & ~beliefs[rows, i] & beliefs[rows, :, j]).sum(axis=1)
            votes_j = (adjacency[rows, j] & ~beliefs[rows, j] & beliefs[rows, :, i]).sum(axis=1)
            exp_i |= 2 * votes_i >= deg1[rows, i]
            exp_j |= 2 * votes_j >= deg1[rows, j]
        act_i = cheater[rows, i] | exp_i
        act_j = cheater[rows, j] | exp_j
        cum[rows, i] += table[act_i.astype(np.intp), act_j.astype(np.intp)]
        cum[rows, j] += table[act_j.astype(np.intp), act_i.astype(np.intp)]
        cnt[rows, i] += 1
        cnt[rows, j] += 1
        beliefs[rows, i, j] = act_j
        beliefs[rows, j, i] = act_i
        coop[:, t], cheat[:, t] = _type_means(cheater, cum, cnt)
    return coop, cheat


def _run_block(cfg: RunConfig, graph: Graph | None, run_indices):
    n, T = cfg.n, cfg.steps
    R = len(run_indices)
    cheater = np.zeros((R, n), dtype=bool)
    pair_i = np.empty((R, T), dtype=np.intp)
    pair_j = np.empty((R, T), dtype=np.intp)
    use_graph = cfg.graph_source != "complete"
    adjacency = np.zeros((R, n, n), dtype=bool) if cfg.graph_source == "random" else None
    shared_pairs = all_pairs(n) if not use_graph else (graph.edges if graph is not None else None)

    for row, run in enumerate(run_indices):
        rng = seed_schedule(cfg.master_seed, run)
        cheater[row, rng.choice(n, size=cfg.m, replace=False)] = True
        pairs = shared_pairs
        if cfg.graph_source == "random":
            g = random_k_regular_connected(n, cfg.k, rng)
            adjacency[row] = g.adjacency
            pairs = g.edges
        idx = rng.integers(len(pairs), size=T)
        pair_i[row] = pairs[idx, 0]
        pair_j[row] = pairs[idx, 1]

    if cfg.graph_source == "fixed":
        adjacency = graph.adjacency
    return simulate_block(cheater, pair_i, pair_j, cfg.payoffs, adjacency if cfg.model == "gossip" else None)


def _blocks(runs: int, threads: int, block_size: int = 2000):
    size = max(1, min(block_size, math.ceil(runs / max(threads, 1))))
    return [range(s, min(s + size, runs)) for s in range(0, runs, size)]


def per_run_curves(cfg: RunConfig, graph: Graph | None = None, threads: int = 1):
    """``(coop, cheat)`` arrays of shape ``(runs, steps)``, rows in run order."""
    if cfg.graph_source == "fixed":
        if graph is None:
            raise InvalidParameterError("graph_source='fixed' needs a graph")
        if graph.node_count != cfg.n:
            raise InvalidParameterError(f"graph has {graph.node_count} nodes, config says n={cfg.n}")
        if graph.edge_count == 0:
            raise InvalidParameterError("graph has no edges")
    elif graph is not None:
        raise InvalidParameterError(f"a graph was supplied but graph_source is {cfg.graph_source!r}")
    blocks = _blocks(cfg.runs, threads)
    if threads > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda b: _run_block(cfg, graph, b), blocks))
    else:
        parts = [_run_block(cfg, graph, b) for b in blocks]
    coop = np.concatenate([p[0] for p in parts])
    cheat = np.concatenate([p[1] for p in parts])
    return coop, cheat


def _reduce(values):
    defined = ~np.isnan(values)
    count = defined.sum(axis=0)
    total = np.where(defined, values, 0.0).sum(axis=0)
    with np.errstate(invalid="ignore", divide="ignore"):
        mean = total / count
        dev = np.where(defined, values - mean, 0.0)
        var = (dev * dev).sum(axis=0) / (count - 1)
        sem = np.sqrt(var / count)
    sem = np.where(count > 1, sem, np.where(count == 1, 0.0, np.nan))
    return mean, sem, count


def run_curves(cfg: RunConfig, graph: Graph | None = None, threads: int = 1) -> PayoffCurves:
    """Average each type's per-interaction payoff pointwise over ``cfg.runs`` runs."""
    coop, cheat = per_run_curves(cfg, graph, threads)
    cm, cs, cc = _reduce(coop)
    dm, ds, dc = _reduce(cheat)
    r = 2.0 * np.arange(1, cfg.steps + 1) / cfg.n
    return PayoffCurves(cfg.n, r, cm, dm, cs, ds, cc, dc)


def threshold_from_curves(curves: PayoffCurves) -> ThresholdResult:
    """First recorded point where the cooperator curve meets or beats the cheater curve."""
    if len(curves.r) == 0:
        raise InvalidParameterError("empty curves")
    ok = ~np.isnan(curves.coop_mean) & ~np.isnan(curves.cheat_mean)
    hits = np.flatnonzero(ok & (np.where(ok, curves.coop_mean, 0) >= np.where(ok, curves.cheat_mean, 0)))
    if len(hits) == 0:
        return ThresholdResult(None)
    t = int(hits[0])
    return ThresholdResult(float(curves.r[t]), t + 1)


def sweep_m(cfg: RunConfig, m_values, graph: Graph | None = None, threads: int = 1):
    """Threshold for each cheater count; every m reuses ``cfg``'s seed schedule."""
    out = []
    for m in m_values:
        if not 1 <= m <= cfg.n - 1:
            raise InvalidParameterError(f"m must lie in 1..{cfg.n - 1}, got {m}")
        curves = run_curves(replace(cfg, m=m), graph, threads)
        out.append((m, threshold_from_curves(curves)))
    return out


def sweep_clustering(graph_set: list[GraphSetEntry], m: int, cfg: RunConfig, threads: int = 1) -> list[SweepRecord]:
    """Threshold on each fixed graph of a set; cheaters are redrawn every run."""
    if not graph_set:
        return []
    n = graph_set[0].graph.node_count
    k = graph_set[0].graph.regular_degree()
    for e in graph_set:
        if e.graph.node_count != n or e.graph.regular_degree() != k or k is None:
            raise InvalidParameterError("all graphs in a clustering sweep must share n and be k-regular with one k")
    if not 1 <= m <= n - 1:
        raise InvalidParameterError(f"m must lie in 1..{n - 1}, got {m}")
    run_cfg = replace(cfg, n=n, k=k, m=m, graph_source="fixed")
    records = []
    for e in graph_set:
        curves = run_curves(run_cfg, e.graph, threads)
        records.append(SweepRecord(e.canonical_key, e.chi, m, threshold_from_curves(curves)))
    return records


def ols_fit(points) -> OlsFit:
    """Least-squares line through ``(x, y)`` points; points with ``y is None`` are dropped."""
    kept = [(float(x), float(y)) for x, y in points if y is not None]
    excluded = len(points) - len(kept)
    if len(kept) < 2:
        raise DegenerateRegressionError(f"need at least two points, got {len(kept)}")
    x, y = np.array(kept).T
    dx = x - x.mean()
    sxx = float(dx @ dx)
    if sxx == 0.0:
        raise DegenerateRegressionError("all x values are identical")
    slope = float(dx @ (y - y.mean())) / sxx
    intercept = float(y.mean() - slope * x.mean())
    resid = y - (intercept + slope * x)
    ss_res = float(resid @ resid)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 if ss_tot == 0.0 else min(1.0, max(0.0, 1.0 - ss_res / ss_tot))
    return OlsFit(slope, intercept, r2, len(kept), excluded)


def sweep_ols(records: list[SweepRecord]) -> OlsFit:
    return ols_fit([(rec.chi, rec.threshold.r_star) for rec in records])
