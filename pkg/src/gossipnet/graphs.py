"""Undirected simple graphs: construction, random regular sampling, triangle measures."""

from __future__ import annotations

import warnings
from fractions import Fraction
from math import comb

import numpy as np

from .errors import GenerationError, InvalidParameterError

RETRY_BUDGET = 10_000


class Graph:
    """Immutable undirected simple graph on nodes ``0..node_count-1``.

    The adjacency matrix is stored as a read-only boolean array; it is
    symmetric with an all-false diagonal.
    """

    __slots__ = ("_adj", "_edges")

    def __init__(self, adjacency):
        adj = np.array(adjacency, dtype=bool, copy=True)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise InvalidParameterError(f"adjacency must be square, got shape {adj.shape}")
        if adj.shape[0] < 1:
            raise InvalidParameterError("a graph needs at least one node")
        if adj.diagonal().any():
            raise InvalidParameterError("self-loops are not allowed")
        if not np.array_equal(adj, adj.T):
            raise InvalidParameterError("adjacency must be symmetric")
        adj.setflags(write=False)
        self._adj = adj
        iu, ju = np.nonzero(np.triu(adj, 1))
        edges = np.stack([iu, ju], axis=1).astype(np.intp)
        edges.setflags(write=False)
        self._edges = edges

    @classmethod
    def from_edges(cls, node_count: int, edges) -> Graph:
        adj = np.zeros((node_count, node_count), dtype=bool)
        for u, v in edges:
            if u == v:
                raise InvalidParameterError(f"self-loop at node {u}")
            adj[u, v] = adj[v, u] = True
        return cls(adj)

    @property
    def node_count(self) -> int:
        return self._adj.shape[0]

    @property
    def adjacency(self) -> np.ndarray:
        return self._adj

    @property
    def edges(self) -> np.ndarray:
        """``(E, 2)`` array of edges ``(u, v)`` with ``u < v`` in row-major order."""
        return self._edges

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def degrees(self) -> np.ndarray:
        return self._adj.sum(axis=1)

    def neighbors(self, v: int) -> np.ndarray:
        return np.flatnonzero(self._adj[v])

    def regular_degree(self) -> int | None:
        """The common degree if the graph is regular, else ``None``."""
        deg = self.degrees()
        return int(deg[0]) if (deg == deg[0]).all() else None

    def permuted(self, perm) -> Graph:
        """Relabel so that old node ``v`` becomes node ``perm[v]``."""
        perm = np.asarray(perm)
        inv = np.empty_like(perm)
        inv[perm] = np.arange(len(perm))
        return Graph(self._adj[np.ix_(inv, inv)])

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return np.array_equal(self._adj, other._adj)

    def __hash__(self):
        return hash((self.node_count, self._adj.tobytes()))

    def __repr__(self):
        return f"Graph(node_count={self.node_count}, edges={self.edge_count})"


def complete_graph(n: int) -> Graph:
    return Graph(~np.eye(n, dtype=bool))


def cycle_graph(n: int) -> Graph:
    return circulant_graph(n, [1])


def circulant_graph(n: int, offsets) -> Graph:
    """Node ``v`` is joined to ``v ± d (mod n)`` for every ``d`` in ``offsets``."""
    adj = np.zeros((n, n), dtype=bool)
    idx = np.arange(n)
    for d in offsets:
        adj[idx, (idx + d) % n] = True
        adj[(idx + d) % n, idx] = True
    return Graph(adj)


def _check_regular_params(n, k):
    if n < 1 or k < 0:
        raise InvalidParameterError(f"need n >= 1 and k >= 0, got n={n}, k={k}")
    if (n * k) % 2:
        raise InvalidParameterError(f"n*k must be even, got n={n}, k={k}")
    if k >= n:
        raise InvalidParameterError(f"degree must be below node count, got n={n}, k={k}")


def random_k_regular_connected(n: int, k: int, rng: np.random.Generator) -> Graph:
    """Sample a connected simple k-regular graph with the pairing model.

    Stubs are matched by a uniform random permutation; a sample with a
    self-loop, a repeated edge or more than one component is discarded whole.
    """
    _check_regular_params(n, k)
    if k < 1:
        raise InvalidParameterError("random regular graphs need k >= 1")
    stubs = np.repeat(np.arange(n), k)
    for _ in range(RETRY_BUDGET):
        pairs = rng.permutation(stubs).reshape(-1, 2)
        u, v = pairs[:, 0], pairs[:, 1]
        if (u == v).any():
            continue
        adj = np.zeros((n, n), dtype=np.int8)
        np.add.at(adj, (u, v), 1)
        np.add.at(adj, (v, u), 1)
        if adj.max() > 1:
            continue
        g = Graph(adj.astype(bool))
        if is_connected(g):
            return g
    raise GenerationError(f"no connected simple {k}-regular graph on {n} nodes after {RETRY_BUDGET} tries")


def is_connected(g: Graph) -> bool:
    adj = g.adjacency
    seen = np.zeros(g.node_count, dtype=bool)
    seen[0] = True
    frontier = [0]
    while frontier:
        v = frontier.pop()
        new = adj[v] & ~seen
        seen |= new
        frontier.extend(np.flatnonzero(new).tolist())
    return bool(seen.all())


def local_triangle_count(g: Graph, v: int) -> int:
    """Number of adjacent pairs among the neighbours of ``v``."""
    if not 0 <= v < g.node_count:
        raise InvalidParameterError(f"node {v} out of range")
    nb = g.neighbors(v)
    return int(g.adjacency[np.ix_(nb, nb)].sum()) // 2


def triangle_counts(g: Graph) -> np.ndarray:
    a = g.adjacency.astype(np.int64)
    return np.diagonal(a @ a @ a) // 2


def is_triangle_free(g: Graph) -> bool:
    return not triangle_counts(g).any()


def average_clustering(g: Graph, exact: bool = False):
    """Mean local clustering coefficient.

    Nodes of degree below two contribute zero; a ``RuntimeWarning`` is
    emitted when any are present. With ``exact=True`` the result is a
    ``Fraction``.
    """
    deg = g.degrees()
    tri = triangle_counts(g)
    total = Fraction(0)
    low = 0
    for d, t in zip(deg.tolist(), tri.tolist()):
        if d < 2:
            low += 1
            continue
        total += Fraction(t, comb(d, 2))
    if low:
        warnings.warn(f"{low} node(s) with degree < 2 counted as clustering 0", RuntimeWarning, stacklevel=2)
    chi = total / g.node_count
    return chi if exact else float(chi)
