"""
Evolutionary centrality keeps a vanished hub visible
====================================================

Node ``x`` meets everyone in week 0 and nobody in week 1.  Plain eigenvector
centrality for week 1 gives ``x`` a score of exactly zero.  Blending in the
previous week's adjacency with weight ``alpha`` keeps ``x`` on the map.
"""

import numpy as np

from tempocent import NodeRegistry, SlotGraph, SmoothingConfig, evolutionary_centrality

labels = ("x", "a", "b", "c", "d", "e")
reg = NodeRegistry(labels)

week0 = np.zeros((6, 6))
week0[0, 1:] = week0[1:, 0] = 3
week1 = np.zeros((6, 6))
for u, v in [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]:
    week1[u, v] = week1[v, u] = 2

slots = [SlotGraph(0, week0, reg), SlotGraph(1, week1, reg)]

for alpha in (0.0, 0.25, 0.5, 0.75, 1.0):
    res = evolutionary_centrality(slots, "eigenvector", SmoothingConfig(alpha))[1]
    print(f"alpha={alpha:4.2f}  x={res.scores[0]:.4f}  rank of x={int(res.ranks[0])}")

# alpha=0 is plain centrality; alpha=1 scores week 1 on week 0's contacts.
