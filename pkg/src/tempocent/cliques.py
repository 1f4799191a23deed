"""Maximal clique enumeration and clique-based central nodes.

Both Bron-Kerbosch variants keep ``P``, ``X`` and the neighbour sets as
Python-int bitsets and drive the recursion from an explicit stack, so
near-complete slots cannot hit the interpreter recursion limit.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from .graph import BinaryGraph

__all__ = [
    "Clique",
    "CliqueSet",
    "CliqueLimitError",
    "SentinelReport",
    "DEFAULT_CLIQUE_LIMIT",
    "bron_kerbosch",
    "bron_kerbosch_pivot",
    "clique_histogram",
    "sentinel_nodes",
]

Clique = Tuple[int, ...]

DEFAULT_CLIQUE_LIMIT = 10**7


class CliqueLimitError(RuntimeError):
    def __init__(self, limit: int, slot=None):
        where = f" in slot {slot}" if slot is not None else ""
        super().__init__(f"more than {limit} maximal cliques{where}; aborting")
        self.limit = limit
        self.slot = slot


@dataclass(frozen=True)
class CliqueSet:
    slot: int
    n: int
    cliques: Tuple[Clique, ...]
    size_histogram: Dict[int, int] = field(init=False, compare=False)

    def __post_init__(self):
        cliques = tuple(sorted(tuple(sorted(c)) for c in self.cliques))
        object.__setattr__(self, "cliques", cliques)
        object.__setattr__(self, "size_histogram", dict(sorted(Counter(map(len, cliques)).items())))

    def __len__(self) -> int:
        return len(self.cliques)

    def at_least(self, min_size: int) -> "CliqueSet":
        """Same slot keeping only cliques with ``min_size`` or more members."""
        return CliqueSet(self.slot, self.n, tuple(c for c in self.cliques if len(c) >= min_size))


def _members(mask: int) -> Clique:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def _enumerate(g: BinaryGraph, pivot: bool, limit: int) -> List[Clique]:
    if g.n == 0:
        return []
    nbrs = g.bitsets()
    found: List[Clique] = []

    def frame(r: int, p: int, x: int) -> list:
        if not p and not x:
            if len(found) >= limit:
                raise CliqueLimitError(limit, g.slot)
            found.append(_members(r))
        if pivot and p:
            best, best_count, px = 0, -1, p | x
            while px:
                low = px & -px
                u = low.bit_length() - 1
                count = (nbrs[u] & p).bit_count()
                if count > best_count:
                    best, best_count = u, count
                px ^= low
            candidates = p & ~nbrs[best]
        else:
            candidates = p
        return [r, p, x, candidates]

    stack = [frame(0, (1 << g.n) - 1, 0)]
    while stack:
        top = stack[-1]
        r, p, x, candidates = top
        if not candidates:
            stack.pop()
            continue
        bit = candidates & -candidates
        v = bit.bit_length() - 1
        top[3] = candidates ^ bit
        top[1] = p & ~bit
        top[2] = x | bit
        stack.append(frame(r | bit, p & nbrs[v], x & nbrs[v]))
    return found


def bron_kerbosch(g: BinaryGraph, limit: int = DEFAULT_CLIQUE_LIMIT) -> CliqueSet:
    """All maximal cliques of ``g`` with the plain (pivot-free) recursion.

    ``R`` and ``X`` start empty and ``P`` holds every vertex, so isolated
    vertices come out as singleton cliques.  Raises
    :class:`CliqueLimitError` once more than ``limit`` cliques are found.
    """
    return CliqueSet(g.slot if g.slot is not None else 0, g.n, tuple(_enumerate(g, False, limit)))


def bron_kerbosch_pivot(g: BinaryGraph, limit: int = DEFAULT_CLIQUE_LIMIT) -> CliqueSet:
    """Same result as :func:`bron_kerbosch`, branching only outside the pivot's neighbourhood.

    The pivot is the vertex of ``P | X`` with the most neighbours in ``P``,
    lowest id on ties.
    """
    return CliqueSet(g.slot if g.slot is not None else 0, g.n, tuple(_enumerate(g, True, limit)))


def clique_histogram(sets: Iterable[CliqueSet]) -> Dict[int, int]:
    total: Counter = Counter()
    for s in sets:
        total.update(s.size_histogram)
    return dict(sorted(total.items()))


@dataclass(frozen=True)
class SentinelReport:
    slot: int
    participation: np.ndarray
    common_nodes: Tuple[int, ...]
    persistent_sentinels: Tuple[int, ...]


def sentinel_nodes(sets: Sequence[CliqueSet], phi: float = 1.0, window: int = 3) -> List[SentinelReport]:
    """Nodes shared by the slot's maximal cliques, and those that stay shared.

    A node is *common* in a slot when it belongs to at least ``phi`` of the
    slot's maximal cliques (``phi=1``: all of them; a slot without cliques
    has none).  It is a *persistent sentinel* at slot ``t`` when it was
    common in every slot ``t-window+1 .. t``.
    """
    if not 0.0 < phi <= 1.0:
        raise ValueError(f"phi must be in (0, 1], got {phi}")
    if window < 1:
        raise ValueError(f"window must be positive, got {window}")
    common_by_slot: Dict[int, set] = {}
    reports = []
    for s in sets:
        participation = np.zeros(s.n, dtype=np.int64)
        for c in s.cliques:
            participation[list(c)] += 1
        m = len(s.cliques)
        if m:
            # absorb rounding in phi * m (0.7 * 10 -> 7.000000000000001)
            needed = max(1, math.ceil(phi * m - 1e-9))
            common = tuple(np.flatnonzero(participation >= needed).tolist())
        else:
            common = ()
        common_by_slot[s.slot] = set(common)
        history = [common_by_slot.get(t) for t in range(s.slot - window + 1, s.slot + 1)]
        if all(h is not None for h in history):
            persistent = tuple(sorted(set.intersection(*history)))
        else:
            persistent = ()
        participation.setflags(write=False)
        reports.append(SentinelReport(s.slot, participation, common, persistent))
    return reports
