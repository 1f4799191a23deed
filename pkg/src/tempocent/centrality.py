"""Per-slot centrality measures.

Degree, closeness and betweenness are hop-based and run on the binarized
slot graph.  Eigenvector and PageRank are matrix fixed points and use the
raw weights.
"""

from __future__ import annotations

import enum
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np

from .graph import INF, BinaryGraph, SlotGraph, binarize, connected_components, shortest_path_lengths

__all__ = [
    "CentralityMeasure",
    "CentralityResult",
    "PowerIterationConfig",
    "ConvergenceError",
    "rank_scores",
    "degree_centrality",
    "closeness_centrality",
    "betweenness_centrality",
    "eigenvector_centrality",
    "pagerank_centrality",
    "compute_centrality",
]

logger = logging.getLogger(__name__)


class CentralityMeasure(str, enum.Enum):
    DEGREE = "degree"
    CLOSENESS = "closeness"
    BETWEENNESS = "betweenness"
    EIGENVECTOR = "eigenvector"
    PAGERANK = "pagerank"


class ConvergenceError(RuntimeError):
    def __init__(self, message: str, residual: float, slot: Optional[int] = None):
        super().__init__(message)
        self.residual = residual
        self.slot = slot


@dataclass(frozen=True)
class PowerIterationConfig:
    max_iters: int = 1000
    tolerance: float = 1e-10

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError("max_iters must be positive")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")


def rank_scores(scores: np.ndarray) -> np.ndarray:
    """Node ids by descending score, ties broken by ascending id."""
    scores = np.asarray(scores)
    return np.lexsort((np.arange(len(scores)), -scores))


@dataclass(frozen=True)
class CentralityResult:
    slot: int
    measure: CentralityMeasure
    scores: np.ndarray
    ranking: np.ndarray = field(init=False)
    metadata: Dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        scores = np.asarray(self.scores, dtype=float)
        if not np.all(np.isfinite(scores)) or np.any(scores < 0):
            raise ValueError(f"{self.measure.value}: scores must be finite and non-negative")
        scores.setflags(write=False)
        ranking = rank_scores(scores)
        ranking.setflags(write=False)
        object.__setattr__(self, "scores", scores)
        object.__setattr__(self, "ranking", ranking)

    @property
    def ranks(self) -> np.ndarray:
        """1-based rank of each node (inverse of ``ranking``)."""
        ranks = np.empty(len(self.ranking), dtype=np.int64)
        ranks[self.ranking] = np.arange(1, len(self.ranking) + 1)
        return ranks


def degree_centrality(g: SlotGraph, threshold: float = 0.0) -> CentralityResult:
    bg = binarize(g, threshold)
    scores = np.array([bg.degree(v) for v in range(bg.n)], dtype=float)
    return CentralityResult(g.slot, CentralityMeasure.DEGREE, scores, {"threshold": threshold})


def closeness_centrality(g: SlotGraph, threshold: float = 0.0) -> CentralityResult:
    """Reciprocal of the summed hop distance to every *reachable* node.

    Isolated nodes score 0.  ``metadata["reachable"]`` holds, per node, how
    many other nodes entered the sum; a value below ``n - 1`` means the
    score only covers part of the graph.
    """
    bg = binarize(g, threshold)
    scores = np.zeros(bg.n)
    reachable = np.zeros(bg.n, dtype=np.int64)
    for v in range(bg.n):
        dist = shortest_path_lengths(bg, v)
        finite = dist[dist != INF]
        total = finite.sum()
        reachable[v] = len(finite) - 1
        if total > 0:
            scores[v] = 1.0 / total
    return CentralityResult(
        g.slot,
        CentralityMeasure.CLOSENESS,
        scores,
        {"threshold": threshold, "reachable": reachable.tolist()},
    )


def _single_source_dependencies(bg: BinaryGraph, s: int) -> np.ndarray:
    # BFS shortest-path DAG from s, then back-propagate pair dependencies.
    sigma = np.zeros(bg.n)
    dist = np.full(bg.n, -1, dtype=np.int64)
    preds: list[list[int]] = [[] for _ in range(bg.n)]
    order = []
    sigma[s] = 1.0
    dist[s] = 0
    queue = deque([s])
    while queue:
        u = queue.popleft()
        order.append(u)
        for v in bg.neighbors[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
            if dist[v] == dist[u] + 1:
                sigma[v] += sigma[u]
                preds[v].append(u)
    delta = np.zeros(bg.n)
    for w in reversed(order):
        coeff = (1.0 + delta[w]) / sigma[w]
        for u in preds[w]:
            delta[u] += sigma[u] * coeff
    delta[s] = 0.0
    return delta


def betweenness_centrality(g: SlotGraph, threshold: float = 0.0) -> CentralityResult:
    """Sum over unordered pairs of the fraction of shortest paths through a node.

    Unnormalized; disconnected pairs contribute nothing.
    """
    bg = binarize(g, threshold)
    scores = np.zeros(bg.n)
    for s in range(bg.n):
        scores += _single_source_dependencies(bg, s)
    # every unordered pair was visited from both endpoints
    scores /= 2.0
    return CentralityResult(g.slot, CentralityMeasure.BETWEENNESS, scores, {"threshold": threshold})


def eigenvector_centrality(g: SlotGraph, cfg: PowerIterationConfig = PowerIterationConfig()) -> CentralityResult:
    """Non-negative dominant eigenvector of the weight matrix, unit L2 norm.

    Power iteration from the uniform vector on ``A + s*I`` restricted to
    nodes with at least one edge.  ``s`` is a quarter of the largest row L2
    norm, a lower bound on the dominant eigenvalue: any positive shift stops
    bipartite slots from oscillating, a small one keeps the convergence rate
    close to the unshifted ratio, and tying it to the weights makes the
    iterates independent of the weight unit.  Nodes with no edges get
    exactly zero.

    ``metadata`` carries the dominant eigenvalue, the iteration count and
    the flags ``all_zero`` and ``multiple_components`` (more than one
    component with an edge, so the vector concentrates on the component
    with the largest spectral radius).
    """
    a = g.weights
    n = g.n
    strength = a.sum(axis=1)
    active = strength > 0
    meta: Dict[str, Any] = {"eigenvalue": 0.0, "iterations": 0, "all_zero": False, "multiple_components": False}
    if not active.any():
        logger.warning("slot %s: adjacency is all zero, eigenvector scores set to 0", g.slot)
        meta["all_zero"] = True
        return CentralityResult(g.slot, CentralityMeasure.EIGENVECTOR, np.zeros(n), meta)

    labels = connected_components(binarize(g, 0.0))
    meta["multiple_components"] = len(set(labels[active].tolist())) > 1

    shift = 0.25 * np.sqrt((a * a).sum(axis=1).max())
    mask = active.astype(float)
    x = np.full(n, 1.0 / np.sqrt(n))
    residual = INF
    for it in range(1, cfg.max_iters + 1):
        y = a @ x + shift * mask * x
        y /= np.linalg.norm(y)
        residual = float(np.abs(y - x).max())
        x = y
        if residual < cfg.tolerance:
            break
    else:
        raise ConvergenceError(
            f"eigenvector centrality did not converge in {cfg.max_iters} iterations "
            f"(slot {g.slot}, residual {residual:.3g})",
            residual,
            g.slot,
        )
    meta["iterations"] = it
    meta["eigenvalue"] = float(x @ a @ x)
    return CentralityResult(g.slot, CentralityMeasure.EIGENVECTOR, x, meta)


def pagerank_centrality(
    g: SlotGraph, damping: float = 0.85, cfg: PowerIterationConfig = PowerIterationConfig()
) -> CentralityResult:
    """Weighted PageRank by power iteration from the uniform vector.

    Each node passes its score to neighbours in proportion to edge weight;
    nodes with no edges spread theirs uniformly.  ``damping=1`` drops the
    teleport term entirely, which can fail to converge on bipartite slots.
    """
    if not 0.0 <= damping <= 1.0:
        raise ValueError(f"damping must be in [0, 1], got {damping}")
    a = g.weights
    n = g.n
    if n == 0:
        return CentralityResult(g.slot, CentralityMeasure.PAGERANK, np.zeros(0), {"damping": damping, "iterations": 0})
    strength = a.sum(axis=1)
    dangling = strength == 0
    transition = np.divide(a, strength[:, None], out=np.zeros_like(a), where=~dangling[:, None])

    x = np.full(n, 1.0 / n)
    residual = INF
    for it in range(1, cfg.max_iters + 1):
        y = damping * (x @ transition + x[dangling].sum() / n) + (1.0 - damping) / n
        residual = float(np.abs(y - x).sum())
        x = y
        if residual < cfg.tolerance:
            break
    else:
        hint = " try damping < 1" if damping == 1.0 else ""
        raise ConvergenceError(
            f"pagerank did not converge in {cfg.max_iters} iterations "
            f"(slot {g.slot}, residual {residual:.3g});{hint}",
            residual,
            g.slot,
        )
    x = x / x.sum()
    return CentralityResult(g.slot, CentralityMeasure.PAGERANK, x, {"damping": damping, "iterations": it})


def compute_centrality(
    g: SlotGraph,
    measure,
    threshold: float = 0.0,
    damping: float = 0.85,
    power: PowerIterationConfig = PowerIterationConfig(),
) -> CentralityResult:
    """Dispatch to one measure; parameters a measure does not use are ignored."""
    measure = CentralityMeasure(measure)
    if measure is CentralityMeasure.DEGREE:
        return degree_centrality(g, threshold)
    if measure is CentralityMeasure.CLOSENESS:
        return closeness_centrality(g, threshold)
    if measure is CentralityMeasure.BETWEENNESS:
        return betweenness_centrality(g, threshold)
    if measure is CentralityMeasure.EIGENVECTOR:
        return eigenvector_centrality(g, power)
    return pagerank_centrality(g, damping, power)
