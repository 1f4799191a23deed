"""
Maximal cliques and sentinel nodes
==================================

Four friend groups that all include one person.  Bron-Kerbosch lists the
groups as maximal cliques; the person in every one of them is the natural
sentinel to watch for an outbreak.
"""

from itertools import combinations

from tempocent import BinaryGraph, bron_kerbosch, bron_kerbosch_pivot, clique_histogram, sentinel_nodes

groups = [(0, 1, 2), (0, 3), (0, 4, 5), (0, 6)]
g = BinaryGraph.from_edges(7, [e for grp in groups for e in combinations(grp, 2)])

cliques = bron_kerbosch(g)
assert cliques == bron_kerbosch_pivot(g)
print("maximal cliques:", cliques.cliques)
print("size histogram:", clique_histogram([cliques]))

(report,) = sentinel_nodes([cliques], phi=1.0, window=1)
print("participation:", report.participation.tolist())
print("in every clique:", report.common_nodes)

# phi < 1 relaxes "every clique" to "most cliques"
(loose,) = sentinel_nodes([cliques], phi=0.25, window=1)
print("in >= 25% of cliques:", loose.common_nodes)
