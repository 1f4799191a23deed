"""On-disk formats used by the command line.

All floats are written with Python's shortest round-trip ``repr`` (the
``json`` module default), so identical inputs give byte-identical files.

======================  ==============================================
``registry.json``       JSON array of node labels, index = node id
``slot_<t>.json``       ``{"slot": t, "n": n, "weights": [[...], ...]}``
``centrality_<m>_slot_<t>.json|csv``  one measure on one slot
``cliques.tsv``         ``slot<TAB>size<TAB>label,label,...``
``histogram.csv``       ``size,count``
``sentinels.json``      per-slot participation / common / persistent
======================  ==============================================
"""

from __future__ import annotations

import json
import os
import re
from importlib import resources
from pathlib import Path
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from .centrality import CentralityResult
from .cliques import CliqueSet, SentinelReport
from .graph import NodeRegistry, SlotGraph
from .ingest import SimilarityMatrix

_SLOT_FILE = re.compile(r"slot_(-?\d+)\.json\Z")


def atomic_write(path: Path, text: str) -> None:
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, path)


def dumps(obj, compact: bool = False) -> str:
    if compact:
        return json.dumps(obj, separators=(",", ":"), allow_nan=False) + "\n"
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _number(x: float):
    # integral weights are written as ints so count matrices stay readable
    return int(x) if float(x).is_integer() else float(x)


def write_registry(outdir: Path, registry: NodeRegistry) -> Path:
    path = Path(outdir) / "registry.json"
    atomic_write(path, dumps(list(registry.labels)))
    return path


def slot_record(slot: int, weights: np.ndarray) -> dict:
    return {
        "slot": int(slot),
        "n": int(weights.shape[0]),
        "weights": [[_number(x) for x in row] for row in weights.tolist()],
    }


def write_slots(outdir: Path, sims: Sequence[SimilarityMatrix]) -> List[Path]:
    """Write one file per slot, first removing slot files left by an earlier run."""
    outdir = Path(outdir)
    for old in outdir.glob("slot_*.json"):
        if _SLOT_FILE.match(old.name):
            old.unlink()
    paths = []
    for s in sims:
        path = outdir / f"slot_{s.slot}.json"
        atomic_write(path, dumps(slot_record(s.slot, s.counts), compact=True))
        paths.append(path)
    return paths


def load_run(indir: Path) -> Tuple[NodeRegistry, List[SlotGraph]]:
    """Read ``registry.json`` and every ``slot_<t>.json``, ordered by slot."""
    indir = Path(indir)
    reg_path = indir / "registry.json"
    if not reg_path.exists():
        raise FileNotFoundError(f"{reg_path} not found; run `tempocent ingest` first")
    registry = NodeRegistry(tuple(json.loads(reg_path.read_text(encoding="utf-8"))))
    found = []
    for path in indir.iterdir():
        m = _SLOT_FILE.match(path.name)
        if m:
            found.append((int(m.group(1)), path))
    if not found:
        raise FileNotFoundError(f"no slot_<t>.json files in {indir}")
    graphs = []
    for t, path in sorted(found):
        rec = json.loads(path.read_text(encoding="utf-8"))
        if rec["slot"] != t:
            raise ValueError(f"{path}: slot field {rec['slot']} does not match file name")
        w = np.array(rec["weights"], dtype=float).reshape(rec["n"], rec["n"])
        graphs.append(SlotGraph(t, w, registry))
    return registry, graphs


def centrality_record(res: CentralityResult, registry: NodeRegistry, alpha: float, normalize: str = "none") -> dict:
    scores = res.scores
    if normalize == "max" and len(scores) and scores.max() > 0:
        scores = scores / scores.max()
    ranks = res.ranks
    meta = {k: v for k, v in res.metadata.items() if k != "alpha"}
    return {
        "slot": res.slot,
        "measure": res.measure.value,
        "alpha": alpha,
        "normalize": normalize,
        "scores": [
            {"label": registry.labels[v], "score": float(scores[v]), "rank": int(ranks[v])}
            for v in range(len(scores))
        ],
        "metadata": meta,
    }


def centrality_csv(record: dict) -> str:
    lines = ["slot,measure,label,score,rank"]
    for row in record["scores"]:
        lines.append(f"{record['slot']},{record['measure']},{row['label']},{row['score']!r},{row['rank']}")
    return "\n".join(lines) + "\n"


def clique_lines(sets: Iterable[CliqueSet], registry: NodeRegistry) -> str:
    out = []
    for s in sets:
        for c in s.cliques:
            labels = sorted(registry.labels[v] for v in c)
            out.append(f"{s.slot}\t{len(c)}\t{','.join(labels)}\n")
    return "".join(out)


def histogram_csv(hist: dict) -> str:
    return "size,count\n" + "".join(f"{k},{v}\n" for k, v in sorted(hist.items()))


def sentinel_record(reports: Sequence[SentinelReport], sets: Sequence[CliqueSet], registry: NodeRegistry,
                    phi: float, window: int, min_size: int) -> dict:
    labels = registry.labels
    slots = []
    for rep, s in zip(reports, sets):
        slots.append({
            "slot": rep.slot,
            "clique_count": len(s),
            "participation": {labels[v]: int(c) for v, c in enumerate(rep.participation) if c},
            "common_nodes": [labels[v] for v in rep.common_nodes],
            "persistent_sentinels": [labels[v] for v in rep.persistent_sentinels],
        })
    return {"phi": phi, "window": window, "min_clique_size": min_size, "slots": slots}


def load_schema(name: str) -> dict:
    """One of ``registry``, ``slot``, ``centrality``, ``sentinels``."""
    text = resources.files("tempocent").joinpath("schemas", f"{name}.schema.json").read_text(encoding="utf-8")
    return json.loads(text)
