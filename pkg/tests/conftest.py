from itertools import combinations, permutations

import numpy as np
import pytest

from gossipnet import enumerate_k_regular_connected

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def quartic10():
    return enumerate_k_regular_connected(10, 4)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def brute_force_regular_classes(n, k, connected_only=True):
    """Isomorphism classes of k-regular graphs on n nodes, by full orbit enumeration.

    Every labelled k-regular graph is generated from the upper triangle; each
    not-yet-seen one spawns its whole orbit under all n! relabellings.
    Returns the number of classes.
    """
    pairs = list(combinations(range(n), 2))
    perms = np.array(list(permutations(range(n))))
    weights = {p: 1 << idx for idx, p in enumerate(pairs)}

    labelled = []

    def rec(idx, deg, code):
        if idx == len(pairs):
            if all(d == k for d in deg):
                labelled.append(code)
            return
        u, v = pairs[idx]
        for take in (0, 1):
            if take and (deg[u] == k or deg[v] == k):
                continue
            deg[u] += take
            deg[v] += take
            # (u, n-1) is the last pair that can raise u's degree
            if v < n - 1 or deg[u] == k:
                rec(idx + 1, deg, code | (weights[(u, v)] if take else 0))
            deg[u] -= take
            deg[v] -= take

    rec(0, [0] * n, 0)

    seen = set()
    classes = 0
    for code in labelled:
        if code in seen:
            continue
        edges = [p for p in pairs if code & weights[p]]
        if connected_only and not _connected(n, edges):
            seen.add(code)
            orbit = _orbit(edges, perms, weights)
            seen.update(orbit)
            continue
        classes += 1
        seen.update(_orbit(edges, perms, weights))
    return classes


def _orbit(edges, perms, weights):
    codes = np.zeros(len(perms), dtype=np.int64)
    for u, v in edges:
        a, b = perms[:, u], perms[:, v]
        lo, hi = np.minimum(a, b), np.maximum(a, b)
        n = perms.shape[1]
        # index of pair (lo, hi) in combinations order
        idx = lo * n - lo * (lo + 1) // 2 + (hi - lo - 1)
        codes |= np.left_shift(np.int64(1), idx.astype(np.int64))
    return set(codes.tolist())


def _connected(n, edges):
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen, stack = {0}, [0]
    while stack:
        for w in adj[stack.pop()] - seen:
            seen.add(w)
            stack.append(w)
    return len(seen) == n


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
