"""Evolutionary centrality: centrality on a history-blended adjacency.

Slot ``t`` is scored on ``(1 - alpha) * A[t] + alpha * A[t-1]`` where both
matrices are the *raw* slot adjacencies.  The first slot has no history and
is scored as is.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence

from .centrality import CentralityResult, PowerIterationConfig, compute_centrality, CentralityMeasure, ConvergenceError
from .graph import ShapeError, SlotGraph

__all__ = ["SmoothingConfig", "smooth_adjacency", "evolutionary_centrality"]


@dataclass(frozen=True)
class SmoothingConfig:
    alpha: float = 0.5

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {self.alpha}")


def smooth_adjacency(
    current: SlotGraph, previous: Optional[SlotGraph], cfg: SmoothingConfig = SmoothingConfig()
) -> SlotGraph:
    if previous is None:
        return current
    if previous.registry is not current.registry and previous.registry != current.registry:
        raise ShapeError(f"slots {previous.slot} and {current.slot} use different registries")
    if previous.n != current.n:
        raise ShapeError(f"slots {previous.slot} and {current.slot} differ in size")
    a = cfg.alpha
    w = (1.0 - a) * current.weights + a * previous.weights
    return SlotGraph(current.slot, w, current.registry)


def evolutionary_centrality(
    slots: Sequence[SlotGraph],
    measure,
    cfg: SmoothingConfig = SmoothingConfig(),
    threshold: float = 0.0,
    damping: float = 0.85,
    power: PowerIterationConfig = PowerIterationConfig(),
) -> List[CentralityResult]:
    """Score every slot on its smoothed adjacency.

    ``slots`` must be ordered with consecutive slot indices.  Hop-based
    measures binarize the smoothed matrix at ``threshold``, so at the
    default of 0 an edge present in either slot survives.
    """
    if not slots:
        raise ValueError("no slots")
    for prev, cur in zip(slots, slots[1:]):
        if cur.slot != prev.slot + 1:
            raise ValueError(f"slots must be consecutive, got {prev.slot} then {cur.slot}")
    measure = CentralityMeasure(measure)
    out = []
    for t, g in enumerate(slots):
        smoothed = smooth_adjacency(g, slots[t - 1] if t else None, cfg)
        try:
            res = compute_centrality(smoothed, measure, threshold=threshold, damping=damping, power=power)
        except ConvergenceError as exc:
            raise ConvergenceError(f"{measure.value}, slot {g.slot}: {exc}", exc.residual, g.slot) from exc
        res.metadata["alpha"] = cfg.alpha
        out.append(res)
    return out
