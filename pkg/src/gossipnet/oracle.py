"""Exact expected payoff curves for tiny groups, by exhaustive enumeration.

Every type assignment and every sequence of pairings is weighted equally,
and the per-type means are averaged over the (assignment, sequence)
outcomes in which they are defined, which is what the Monte Carlo
estimator converges to. Subtrees that start from the same state are
shared through memoisation; the arithmetic is exact (``Fraction``).

The game rules are restated here on plain tuples rather than imported, so
the oracle does not share code with the simulator it checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .errors import CapacityError, InvalidParameterError
from .graphs import Graph

MAX_NODES = 4
MAX_STEPS = 8


@dataclass(frozen=True)
class ExactCurves:
    n: int
    r: tuple[Fraction, ...]
    coop_mean: tuple[Fraction | None, ...]
    cheat_mean: tuple[Fraction | None, ...]
    coop_defined: tuple[Fraction, ...]
    cheat_defined: tuple[Fraction, ...]


def _exact(value) -> Fraction:
    # decimal literal of the float, so -1.6 becomes -8/5
    return Fraction(repr(float(value)))


def _check(n, m, steps):
    if n > MAX_NODES or steps > MAX_STEPS:
        raise CapacityError(f"exact enumeration is limited to n <= {MAX_NODES}, steps <= {MAX_STEPS}")
    if n < 2 or not 0 <= m <= n or steps < 1:
        raise InvalidParameterError(f"invalid (n={n}, m={m}, steps={steps})")


def _curves(n, m, steps, payoffs, pairs, neighbours):
    table = {
        (False, False): _exact(payoffs.cc),
        (False, True): _exact(payoffs.cd),
        (True, False): _exact(payoffs.dc),
        (True, True): _exact(payoffs.dd),
    }
    totals = [[Fraction(0), 0, Fraction(0), 0] for _ in range(steps)]
    outcomes = 0

    for cheaters in combinations(range(n), m):
        is_cheater = tuple(v in cheaters for v in range(n))

        def expects_cheat(beliefs, i, j):
            if (i, j) in beliefs:
                return True
            if neighbours is None:
                return False
            votes = sum(1 for f in neighbours[i] if (i, f) not in beliefs and (f, j) in beliefs)
            return Fraction(votes, len(neighbours[i]) + 1) >= Fraction(1, 2)

        def means(cum, cnt):
            out = []
            for want in (False, True):
                ratios = [cum[v] / cnt[v] for v in range(n) if is_cheater[v] == want and cnt[v] > 0]
                out.append(sum(ratios, Fraction(0)) / len(ratios) if ratios else None)
            return out

        @lru_cache(maxsize=None)
        def future(beliefs, cum, cnt, remaining):
            acc = [[Fraction(0), 0, Fraction(0), 0] for _ in range(remaining)]
            for i, j in pairs:
                ai = is_cheater[i] or expects_cheat(beliefs, i, j)
                aj = is_cheater[j] or expects_cheat(beliefs, j, i)
                cum2 = list(cum)
                cnt2 = list(cnt)
                cum2[i] += table[ai, aj]
                cum2[j] += table[aj, ai]
                cnt2[i] += 1
                cnt2[j] += 1
                new = set(beliefs) - {(i, j), (j, i)}
                if aj:
                    new.add((i, j))
                if ai:
                    new.add((j, i))
                cm, dm = means(cum2, cnt2)
                if cm is not None:
                    acc[0][0] += cm
                    acc[0][1] += 1
                if dm is not None:
                    acc[0][2] += dm
                    acc[0][3] += 1
                if remaining > 1:
                    sub = future(frozenset(new), tuple(cum2), tuple(cnt2), remaining - 1)
                    for t, row in enumerate(sub, 1):
                        for c in range(4):
                            acc[t][c] += row[c]
            return tuple(tuple(row) for row in acc)

        result = future(frozenset(), (Fraction(0),) * n, (0,) * n, steps)
        for t in range(steps):
            for c in range(4):
                totals[t][c] += result[t][c]
        outcomes += 1

    coop, cheat, coop_def, cheat_def = [], [], [], []
    for t in range(steps):
        per_step = outcomes * len(pairs) ** (t + 1)
        cs, cn, ds, dn = totals[t]
        coop.append(cs / cn if cn else None)
        cheat.append(ds / dn if dn else None)
        coop_def.append(Fraction(cn, per_step))
        cheat_def.append(Fraction(dn, per_step))
    r = tuple(Fraction(2 * (t + 1), n) for t in range(steps))
    return ExactCurves(n, r, tuple(coop), tuple(cheat), tuple(coop_def), tuple(cheat_def))


def exact_vanilla_curves(n: int, m: int, steps: int, payoffs, graph: Graph | None = None) -> ExactCurves:
    """Exact curves for the vanilla rule; with ``graph`` the pairs are its edges."""
    _check(n, m, steps)
    if graph is None:
        pairs = tuple(combinations(range(n), 2))
    else:
        if graph.node_count != n:
            raise InvalidParameterError("graph size does not match n")
        pairs = tuple((int(i), int(j)) for i, j in graph.edges)
    return _curves(n, m, steps, payoffs, pairs, None)


def exact_gossip_curves(g: Graph, m: int, steps: int, payoffs) -> ExactCurves:
    n = g.node_count
    _check(n, m, steps)
    pairs = tuple((int(i), int(j)) for i, j in g.edges)
    if not pairs:
        raise InvalidParameterError("graph has no edges")
    neighbours = tuple(tuple(int(f) for f in g.neighbors(v)) for v in range(n))
    return _curves(n, m, steps, payoffs, pairs, neighbours)
