"""Time-sliced graph model shared by every analysis module.

A run owns one :class:`NodeRegistry`; every :class:`SlotGraph` built from it
has the same node count, so users absent from a slot appear as isolated
nodes rather than being dropped.  Weights are stored as a dense ``n x n``
float array.  Everything that touches the storage goes through
:meth:`SlotGraph.weights` and :func:`binarize`, which is the seam for a
sparse backend later on.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

__all__ = [
    "INF",
    "GraphError",
    "InvalidNodeError",
    "ShapeError",
    "NodeRegistry",
    "SlotGraph",
    "BinaryGraph",
    "check_adjacency",
    "binarize",
    "shortest_path_lengths",
    "connected_components",
]

#: Distance reported for nodes that cannot be reached from the source.
INF = float("inf")


class GraphError(ValueError):
    """Base class for malformed graph input."""


class InvalidNodeError(GraphError, IndexError):
    pass


class ShapeError(GraphError):
    pass


@dataclass(frozen=True)
class NodeRegistry:
    """Bijection between external labels and dense node ids ``0..n-1``."""

    labels: tuple[str, ...]
    index: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        labels = tuple(self.labels)
        index = {label: i for i, label in enumerate(labels)}
        if len(index) != len(labels):
            raise GraphError("duplicate labels in registry")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "index", index)

    @classmethod
    def from_labels(cls, labels: Iterable[str]) -> "NodeRegistry":
        """Build a registry keeping the first occurrence of each label."""
        return cls(tuple(dict.fromkeys(labels)))

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, label: object) -> bool:
        return label in self.index

    def id_of(self, label: str) -> int:
        return self.index[label]

    def label_of(self, node: int) -> str:
        return self.labels[node]


def check_adjacency(w) -> np.ndarray:
    """Validate a weight matrix and return it as a read-only float array.

    Raises :class:`ShapeError` unless ``w`` is square, symmetric, finite,
    non-negative and has a zero diagonal.
    """
    w = np.array(w, dtype=float)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise ShapeError(f"adjacency must be square, got shape {w.shape}")
    if not np.all(np.isfinite(w)):
        raise ShapeError("adjacency has non-finite entries")
    if np.any(w < 0):
        raise ShapeError("adjacency has negative entries")
    if np.any(np.diag(w) != 0):
        raise ShapeError("adjacency has self-loops (non-zero diagonal)")
    if not np.array_equal(w, w.T):
        raise ShapeError("adjacency is not symmetric")
    w.setflags(write=False)
    return w


class SlotGraph:
    """Weighted undirected snapshot of the network at one time slot."""

    __slots__ = ("slot", "_w", "registry")

    def __init__(self, slot: int, weights, registry: NodeRegistry):
        w = check_adjacency(weights)
        if w.shape[0] != len(registry):
            raise ShapeError(
                f"slot {slot}: adjacency has {w.shape[0]} nodes, "
                f"registry has {len(registry)}"
            )
        self.slot = int(slot)
        self._w = w
        self.registry = registry

    @property
    def weights(self) -> np.ndarray:
        return self._w

    @property
    def n(self) -> int:
        return self._w.shape[0]

    def __repr__(self) -> str:
        return f"SlotGraph(slot={self.slot}, n={self.n}, edges={int(np.count_nonzero(self._w)) // 2})"


@dataclass(frozen=True)
class BinaryGraph:
    """Unweighted view of a slot: ``neighbors[v]`` is sorted and duplicate-free."""

    n: int
    neighbors: tuple[tuple[int, ...], ...]
    slot: Optional[int] = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], slot: Optional[int] = None) -> "BinaryGraph":
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidNodeError(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"self-loop on node {u}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in adj), slot)

    @classmethod
    def from_matrix(cls, m, slot: Optional[int] = None) -> "BinaryGraph":
        """Edges wherever ``m`` is truthy; ``m`` must be symmetric with an empty diagonal."""
        m = np.asarray(m, dtype=bool)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or not np.array_equal(m, m.T) or m.diagonal().any():
            raise ShapeError("boolean adjacency must be square, symmetric, loop-free")
        return cls(m.shape[0], tuple(tuple(np.flatnonzero(row).tolist()) for row in m), slot)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.neighbors[u] if u < v]

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    def to_matrix(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=bool)
        for u, nbrs in enumerate(self.neighbors):
            m[u, list(nbrs)] = True
        return m

    def bitsets(self) -> list[int]:
        """Neighbour sets as Python-int bitmasks (bit ``v`` set iff ``v`` is adjacent)."""
        out = []
        for nbrs in self.neighbors:
            mask = 0
            for v in nbrs:
                mask |= 1 << v
            out.append(mask)
        return out


def binarize(g: SlotGraph, threshold: float = 0.0) -> BinaryGraph:
    """Keep edge ``(i, j)`` iff ``w[i, j] > threshold`` (strict)."""
    if threshold < 0:
        raise ValueError(f"threshold must be >= 0, got {threshold}")
    return BinaryGraph.from_matrix(g.weights > threshold, slot=g.slot)


def shortest_path_lengths(g: BinaryGraph, source: int) -> np.ndarray:
    """Hop distances from ``source`` by breadth-first search.

    Unreachable nodes carry :data:`INF`.
    """
    if not 0 <= source < g.n:
        raise InvalidNodeError(f"source {source} outside 0..{g.n - 1}")
    dist = np.full(g.n, INF)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in g.neighbors[u]:
            if dist[v] == INF:
                dist[v] = du
                queue.append(v)
    return dist


def connected_components(g: BinaryGraph) -> np.ndarray:
    """Label each node with its component number.

    Components are numbered ``0, 1, ...`` in order of their lowest node id.
    """
    labels = np.full(g.n, -1, dtype=np.int64)
    current = 0
    for start in range(g.n):
        if labels[start] >= 0:
            continue
        labels[start] = current
        stack = [start]
        while stack:
            u = stack.pop()
            for v in g.neighbors[u]:
                if labels[v] < 0:
                    labels[v] = current
                    stack.append(v)
        current += 1
    return labels
