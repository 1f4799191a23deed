"""Seeded synthetic proximity traces with community and hub structure.

Each unordered pair receives a Poisson number of sightings per slot, at a
rate that depends on whether the two nodes share a community; pairs
touching a hub have their rate multiplied by ``hub_boost``.  Sighting
times are uniform inside the slot.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

import numpy as np

from .ingest import WEEK, ContactEvent, events_to_csv

__all__ = ["SyntheticModel", "generate_events", "generate_csv"]


@dataclass(frozen=True)
class SyntheticModel:
    n_nodes: int = 40
    n_slots: int = 5
    n_communities: int = 4
    intra_rate: float = 3.0
    inter_rate: float = 0.05
    hub_count: int = 2
    hub_boost: float = 4.0
    seed: int = 0
    slot_duration: int = WEEK
    # a multiple of WEEK, so the default slot origin lines up with slot 0
    start: int = 2000 * WEEK

    def __post_init__(self):
        if self.n_nodes < 0 or self.n_slots < 0 or self.n_communities < 1:
            raise ValueError("n_nodes, n_slots must be >= 0 and n_communities >= 1")
        if self.intra_rate < 0 or self.inter_rate < 0 or self.hub_boost < 0:
            raise ValueError("rates and hub_boost must be >= 0")
        if not 0 <= self.hub_count <= self.n_nodes:
            raise ValueError("hub_count must be in [0, n_nodes]")
        if self.slot_duration < 1 or self.start < 0:
            raise ValueError("slot_duration must be positive and start non-negative")

    def labels(self) -> List[str]:
        width = max(3, len(str(max(self.n_nodes - 1, 0))))
        return [f"u{i:0{width}d}" for i in range(self.n_nodes)]

    def communities(self) -> np.ndarray:
        return np.arange(self.n_nodes) % self.n_communities

    def rates(self, hubs: np.ndarray) -> np.ndarray:
        comm = self.communities()
        same = comm[:, None] == comm[None, :]
        rate = np.where(same, self.intra_rate, self.inter_rate)
        is_hub = np.zeros(self.n_nodes, dtype=bool)
        is_hub[hubs] = True
        rate = np.where(is_hub[:, None] | is_hub[None, :], rate * self.hub_boost, rate)
        np.fill_diagonal(rate, 0.0)
        return rate


def generate_events(model: SyntheticModel) -> List[ContactEvent]:
    """Events sorted by ``(timestamp, node_a, node_b)``; deterministic given the seed."""
    rng = np.random.default_rng(model.seed)
    labels = model.labels()
    hubs = np.sort(rng.choice(model.n_nodes, size=model.hub_count, replace=False)) if model.n_nodes else np.array([], int)
    rate = model.rates(hubs)
    iu, ju = np.triu_indices(model.n_nodes, k=1)
    pair_rate = rate[iu, ju]
    events = []
    for slot in range(model.n_slots):
        counts = rng.poisson(pair_rate)
        base = model.start + slot * model.slot_duration
        for k in np.flatnonzero(counts):
            times = base + rng.integers(0, model.slot_duration, size=counts[k])
            a, b = labels[iu[k]], labels[ju[k]]
            events.extend(ContactEvent(a, b, int(t)) for t in times)
    events.sort(key=lambda e: (e.timestamp, e.node_a, e.node_b))
    return events


def generate_csv(model: SyntheticModel) -> str:
    return events_to_csv(generate_events(model))
