"""The 59 connected 4-regular graphs on 10 nodes, and how clustered they are."""

from collections import Counter

from gossipnet import enumerate_k_regular_connected, triangle_counts

entries = enumerate_k_regular_connected(10, 4)
print(len(entries), "graphs")

hist = Counter(round(e.chi, 4) for e in entries)
for chi in sorted(hist):
    print(f"chi={chi:.4f}  {'#' * hist[chi]}")

least = min(entries, key=lambda e: e.chi)
most = max(entries, key=lambda e: e.chi)
for label, e in (("least clustered", least), ("most clustered", most)):
    print(f"{label}: {e.canonical_key}  chi={e.chi:.4f}  triangles per node {triangle_counts(e.graph).tolist()}")
