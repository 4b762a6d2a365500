"""Canonical labelling and isomorph-free enumeration of small regular graphs.

A labelled graph is coded by its upper-triangle adjacency bits read column
by column, the same bit order graph6 uses. The canonical form is the
relabelling with the lexicographically greatest code. Because the first
``p`` columns of the code only involve the nodes placed at positions
``0..p-1``, the maximum is found by placing nodes one position at a time and
keeping only the partial labellings whose next column is maximal.

Enumeration is orderly generation: nodes are added one at a time, each
with its column of back-edges, and a partial graph survives only if it is
itself in canonical form. The induced subgraph on the first ``p`` nodes of
a canonical graph is canonical, so every isomorphism class is reached
exactly once, through its canonical representative.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import graph6
from .errors import CapacityError
from .graphs import Graph, _check_regular_params, average_clustering

MAX_ENUMERATION_NODES = 12


def _masks(g: Graph) -> list[int]:
    out = []
    for row in g.adjacency:
        m = 0
        for v in row.nonzero()[0].tolist():
            m |= 1 << v
        out.append(m)
    return out


def _max_labelling(masks: list[int], n: int, limit: list[int] | None = None):
    """Node order attaining the greatest column code.

    ``limit`` gives, per position, the column that the identity labelling
    produces. When supplied the search stops as soon as some labelling beats
    the identity and returns ``None``.
    """
    # a partial labelling is (order, rest, scores): rest lists the unplaced
    # nodes and scores[x] the bits of x's column against the placed nodes,
    # first-placed bit highest
    frontier = []
    for v in range(n):
        mv = masks[v]
        rest = tuple(w for w in range(n) if w != v)
        frontier.append(((v,), rest, {w: (mv >> w) & 1 for w in rest}))

    for p in range(1, n):
        best = max(max(scores.values()) for _, _, scores in frontier)
        if limit is not None and best > limit[p]:
            return None
        nxt = {}
        for order, rest, scores in frontier:
            for w in rest:
                if scores[w] != best:
                    continue
                mw = masks[w]
                rest2 = tuple(x for x in rest if x != w)
                scores2 = {x: (scores[x] << 1) | ((mw >> x) & 1) for x in rest2}
                # labellings agreeing on what is left to place give the same code suffixes
                key = (rest2, tuple(scores2.values()))
                if key not in nxt:
                    nxt[key] = (order + (w,), rest2, scores2)
        frontier = list(nxt.values())
    return frontier[0][0]


def _identity_columns(masks: list[int], n: int) -> list[int]:
    cols = [0] * n
    for p in range(1, n):
        c = 0
        for q in range(p):
            c = (c << 1) | ((masks[q] >> p) & 1)
        cols[p] = c
    return cols


def canonical_form(g: Graph) -> Graph:
    """Relabelling of ``g`` with the greatest column code."""
    n = g.node_count
    order = _max_labelling(_masks(g), n)
    perm = [0] * n
    for pos, v in enumerate(order):
        perm[v] = pos
    return g.permuted(perm)


def canonical_key(g: Graph) -> str:
    """Isomorphism-invariant key: the graph6 token of the canonical form."""
    return graph6.encode(canonical_form(g))


def is_canonical(g: Graph) -> bool:
    masks = _masks(g)
    return _is_canonical_masks(masks, g.node_count)


def _is_canonical_masks(masks, n):
    return _max_labelling(masks, n, _identity_columns(masks, n)) is not None


@dataclass(frozen=True)
class GraphSetEntry:
    graph: Graph
    canonical_key: str
    chi: float


def enumerate_k_regular_connected(n: int, k: int) -> list[GraphSetEntry]:
    """One representative per isomorphism class of connected k-regular graphs.

    Representatives are in canonical form and sorted by canonical key.
    """
    _check_regular_params(n, k)
    if n > MAX_ENUMERATION_NODES:
        raise CapacityError(f"exhaustive enumeration is limited to n <= {MAX_ENUMERATION_NODES}, got {n}")
    found = []
    masks = [0] * n
    deg = [0] * n
    prev_col = []  # prev_col[u] is the back-edge column chosen for node u

    def extend(p):
        if p == n:
            found.append(list(masks))
            return
        after = n - 1 - p
        eligible = [u for u in range(p) if deg[u] < k]
        mandatory = [u for u in eligible if deg[u] + after < k]
        if any(deg[u] + 1 + after < k for u in mandatory):
            return
        optional = [u for u in eligible if u not in mandatory]
        lo = max(len(mandatory), k - after, 1 if p > 0 else 0)
        hi = min(k, len(eligible)) if p > 0 else 0
        for size in range(hi, lo - 1, -1):
            for extra in combinations(optional, size - len(mandatory)):
                chosen = mandatory + list(extra)
                col = 0
                for u in chosen:
                    col |= 1 << (p - 1 - u)
                # swapping nodes p-1 and p must not raise the code
                if p >= 2 and (col >> 1) > prev_col[p - 1]:
                    continue
                for u in chosen:
                    masks[u] |= 1 << p
                    deg[u] += 1
                masks[p] = sum(1 << u for u in chosen)
                deg[p] = len(chosen)
                if _is_canonical_masks(masks[: p + 1], p + 1):
                    prev_col.append(col)
                    extend(p + 1)
                    prev_col.pop()
                for u in chosen:
                    masks[u] ^= 1 << p
                    deg[u] -= 1
                masks[p] = 0
                deg[p] = 0

    extend(0)
    entries = []
    for ms in found:
        g = Graph([[(ms[u] >> v) & 1 for v in range(n)] for u in range(n)])
        entries.append(GraphSetEntry(g, canonical_key(g), average_clustering(g)))
    entries.sort(key=lambda e: e.canonical_key)
    return entries
