"""
Five centrality measures on one contact slot
============================================

A slot is a symmetric weight matrix: entry ``(i, j)`` counts the 5-minute
intervals in which ``i`` and ``j`` were seen together.  Degree, closeness and
betweenness look only at which pairs met; eigenvector and PageRank also use
how often.
"""

import numpy as np

from tempocent import NodeRegistry, SlotGraph, compute_centrality

# a bridge node (c) between two small groups, with one heavy friendship (a-b)
labels = ["a", "b", "c", "d", "e"]
w = np.zeros((5, 5))
for (u, v), count in {(0, 1): 9, (0, 2): 1, (1, 2): 1, (2, 3): 2, (2, 4): 2, (3, 4): 1}.items():
    w[u, v] = w[v, u] = count

g = SlotGraph(0, w, NodeRegistry(tuple(labels)))

for measure in ["degree", "closeness", "betweenness", "eigenvector", "pagerank"]:
    res = compute_centrality(g, measure, damping=0.85)
    top = ", ".join(f"{labels[v]}={res.scores[v]:.3f}" for v in res.ranking)
    print(f"{measure:>12}: {top}")

# The bridge c wins every hop-based measure, while the heavy a-b pair
# pulls eigenvector centrality towards a and b.
