"""Contact-event parsing and per-slot similarity matrices.

Input is one proximity sighting per line::

    # optional comments
    node_a,node_b,timestamp
    u01,u07,1209600123

A pair's similarity in a slot is the number of *distinct* sub-intervals of
that slot in which the pair was sighted at least once, so repeated scans
inside one interval count once.
"""

from __future__ import annotations

import io
import os
import re
from dataclasses import dataclass
from typing import IO, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from .graph import NodeRegistry, ShapeError, SlotGraph

__all__ = [
    "HEADER",
    "WEEK",
    "ContactEvent",
    "ParseError",
    "ParseWarning",
    "OutOfRangeError",
    "ParsedTrace",
    "SlotConfig",
    "SimilarityMatrix",
    "parse_events",
    "read_events",
    "build_similarity",
    "to_slot_graphs",
    "events_to_csv",
]

HEADER = "node_a,node_b,timestamp"
WEEK = 7 * 24 * 3600
DEFAULT_INTERVAL = 300

_INT_RE = re.compile(r"[+-]?[0-9]+\Z")


class ParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"{message} at line {lineno}")
        self.lineno = lineno
        self.reason = message


class OutOfRangeError(ValueError):
    pass


@dataclass(frozen=True)
class ContactEvent:
    node_a: str
    node_b: str
    timestamp: int

    def __post_init__(self):
        if self.node_a == self.node_b:
            raise ValueError(f"self-contact for {self.node_a!r}")
        if self.timestamp < 0:
            raise ValueError(f"negative timestamp {self.timestamp}")

    @property
    def pair(self) -> Tuple[str, str]:
        return (self.node_a, self.node_b) if self.node_a < self.node_b else (self.node_b, self.node_a)


class ParseWarning(NamedTuple):
    lineno: int
    message: str


class ParsedTrace(NamedTuple):
    events: List[ContactEvent]
    registry: NodeRegistry
    warnings: List[ParseWarning]


def _check_line(line: str) -> Union[ContactEvent, str]:
    fields = line.split(",")
    if len(fields) != 3:
        return f"expected 3 fields, got {len(fields)}"
    a, b, ts = fields
    if not a or not b:
        return "empty node label"
    if not _INT_RE.match(ts):
        return f"non-integer timestamp {ts!r}"
    ts = int(ts)
    if ts < 0:
        return f"negative timestamp {ts}"
    if a == b:
        return "self-contact"
    return ContactEvent(a, b, ts)


def parse_events(stream: Union[IO, Iterable], strict: bool = True) -> ParsedTrace:
    """Parse contact CSV lines from a text or binary stream.

    In strict mode the first malformed line raises :class:`ParseError`;
    otherwise it is skipped and reported in ``warnings``.  The registry
    holds every label seen on a valid line, in first-seen order.
    """
    events: List[ContactEvent] = []
    warnings: List[ParseWarning] = []
    header_allowed = True
    for lineno, raw in enumerate(stream, start=1):
        if isinstance(raw, bytes):
            try:
                raw = raw.decode("utf-8")
            except UnicodeDecodeError:
                result = "invalid UTF-8"
                raw = None
        if raw is not None:
            line = raw.rstrip("\r\n")
            if not line or line.startswith("#"):
                continue
            if header_allowed and line == HEADER:
                header_allowed = False
                continue
            result = _check_line(line)
        header_allowed = False
        if isinstance(result, ContactEvent):
            events.append(result)
        elif strict:
            raise ParseError(lineno, result)
        else:
            warnings.append(ParseWarning(lineno, result))
    registry = NodeRegistry.from_labels(label for e in events for label in (e.node_a, e.node_b))
    return ParsedTrace(events, registry, warnings)


def read_events(path: Union[str, os.PathLike], strict: bool = True) -> ParsedTrace:
    with open(path, "rb") as fh:
        return parse_events(fh, strict=strict)


@dataclass(frozen=True)
class SlotConfig:
    """Slot length, proximity sub-interval length and the epoch of slot 0.

    ``origin=None`` means: the earliest event timestamp rounded down to a
    multiple of ``slot_duration``.
    """

    slot_duration: int = WEEK
    interval_duration: int = DEFAULT_INTERVAL
    origin: Optional[int] = None

    def __post_init__(self):
        if self.interval_duration < 1:
            raise ValueError("interval_duration must be >= 1")
        if self.slot_duration < self.interval_duration:
            raise ValueError("slot_duration must be >= interval_duration")
        if self.slot_duration % self.interval_duration:
            raise ValueError("slot_duration must be a multiple of interval_duration")

    @property
    def intervals_per_slot(self) -> int:
        return self.slot_duration // self.interval_duration

    def resolve_origin(self, events: Sequence[ContactEvent]) -> int:
        if self.origin is not None:
            return self.origin
        first = min(e.timestamp for e in events)
        return first - first % self.slot_duration


@dataclass(frozen=True)
class SimilarityMatrix:
    slot: int
    counts: np.ndarray

    @property
    def n(self) -> int:
        return self.counts.shape[0]


def build_similarity(
    events: Sequence[ContactEvent], registry: NodeRegistry, cfg: SlotConfig = SlotConfig()
) -> List[SimilarityMatrix]:
    """Count distinct co-proximity intervals per pair and slot.

    Returns one matrix per slot from the first to the last non-empty slot,
    including empty slots in between.
    """
    if not events:
        raise ValueError("no events")
    origin = cfg.resolve_origin(events)
    n = len(registry)
    seen = set()
    for e in events:
        if e.timestamp < origin:
            raise OutOfRangeError(f"event {e} precedes slot origin {origin}")
        i, j = registry.id_of(e.node_a), registry.id_of(e.node_b)
        if i > j:
            i, j = j, i
        seen.add((i, j, (e.timestamp - origin) // cfg.interval_duration))

    per_slot = cfg.intervals_per_slot
    keys = np.array(sorted(seen), dtype=np.int64).reshape(-1, 3)
    slots = keys[:, 2] // per_slot
    first, last = int(slots.min()), int(slots.max())
    counts = np.zeros((last - first + 1, n, n), dtype=np.int64)
    np.add.at(counts, (slots - first, keys[:, 0], keys[:, 1]), 1)
    counts = counts + counts.transpose(0, 2, 1)
    out = []
    for k in range(counts.shape[0]):
        m = counts[k]
        m.setflags(write=False)
        out.append(SimilarityMatrix(first + k, m))
    return out


def to_slot_graphs(sims: Sequence[SimilarityMatrix], registry: NodeRegistry) -> List[SlotGraph]:
    graphs = []
    for s in sims:
        if s.n != len(registry):
            raise ShapeError(f"slot {s.slot}: matrix has {s.n} nodes, registry has {len(registry)}")
        graphs.append(SlotGraph(s.slot, s.counts.astype(float), registry))
    return graphs


def events_to_csv(events: Iterable[ContactEvent], header: bool = True) -> str:
    buf = io.StringIO()
    if header:
        buf.write(HEADER + "\n")
    for e in events:
        buf.write(f"{e.node_a},{e.node_b},{e.timestamp}\n")
    return buf.getvalue()
