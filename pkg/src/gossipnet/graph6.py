"""Short-form graph6 encoding (up to 62 nodes).

One graph per line. The first byte is ``n + 63``; the upper triangle is read
column by column (``(0,1), (0,2), (1,2), (0,3), ...``), padded with zeros to
a multiple of six bits, and packed six bits per byte with offset 63.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import Graph6ParseError, InvalidParameterError
from .graphs import Graph

MAX_NODES = 62


def upper_triangle_bits(adj: np.ndarray) -> np.ndarray:
    """Upper-triangle bits in column-major order."""
    n = adj.shape[0]
    rows, cols = _column_major_index(n)
    return adj[rows, cols]


def _column_major_index(n):
    # row-major walk of the strict lower triangle == column-major walk of the upper one
    j, i = np.tril_indices(n, -1)
    return i, j


def encode(g: Graph) -> str:
    n = g.node_count
    if n > MAX_NODES:
        raise InvalidParameterError(f"short-form graph6 supports at most {MAX_NODES} nodes, got {n}")
    bits = upper_triangle_bits(g.adjacency).astype(np.uint8)
    pad = (-len(bits)) % 6
    bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)]).reshape(-1, 6)
    values = bits @ (1 << np.arange(5, -1, -1))
    return chr(n + 63) + "".join(chr(int(v) + 63) for v in values)


def decode(token: str) -> Graph:
    if not token:
        raise Graph6ParseError("empty graph6 token", 0)
    for pos, ch in enumerate(token):
        if not 63 <= ord(ch) <= 126:
            raise Graph6ParseError(f"byte {ord(ch)!r} outside 63..126", pos)
    n = ord(token[0]) - 63
    if n > MAX_NODES:
        raise Graph6ParseError("long-form graph6 size header is not supported", 0)
    nbits = n * (n - 1) // 2
    expected = 1 + (nbits + 5) // 6
    if len(token) != expected:
        raise Graph6ParseError(f"expected {expected} bytes for n={n}, got {len(token)}", min(len(token), expected))
    if n == 0:
        raise Graph6ParseError("graph with zero nodes", 0)
    values = np.array([ord(c) - 63 for c in token[1:]], dtype=np.uint8)
    bits = ((values[:, None] >> np.arange(5, -1, -1)) & 1).ravel()
    if bits[nbits:].any():
        raise Graph6ParseError("nonzero padding bits", len(token) - 1)
    adj = np.zeros((n, n), dtype=bool)
    i, j = _column_major_index(n)
    adj[i, j] = bits[:nbits].astype(bool)
    adj |= adj.T
    return Graph(adj)


def write_graph6(graphs, path) -> None:
    text = "".join(encode(g) + "\n" for g in graphs)
    Path(path).write_bytes(text.encode("ascii"))


def read_graph6(path) -> list[Graph]:
    """Read one graph per non-blank line; parse errors carry the line number."""
    graphs = []
    with open(path, encoding="latin-1", newline="") as fh:
        for lineno, line in enumerate(fh, 1):
            token = line.rstrip("\r\n")
            if not token.strip():
                continue
            try:
                graphs.append(decode(token))
            except Graph6ParseError as exc:
                raise Graph6ParseError(f"line {lineno}: {exc.message}", exc.offset) from None
    return graphs
