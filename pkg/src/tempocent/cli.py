"""``tempocent`` command line.

Subcommands::

    tempocent synth      --output trace.csv --seed 42
    tempocent ingest     --input trace.csv --outdir run/
    tempocent centrality --input run/ --measure all --alpha 0.5
    tempocent cliques    --input run/ --min-clique-size 2
    tempocent report     --input trace.csv --outdir run/

Exit status is 0 only when every requested output was written.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from . import store
from .centrality import CentralityMeasure, PowerIterationConfig, compute_centrality
from .cliques import DEFAULT_CLIQUE_LIMIT, bron_kerbosch, bron_kerbosch_pivot, clique_histogram, sentinel_nodes
from .evolutionary import SmoothingConfig, evolutionary_centrality
from .graph import binarize
from .ingest import DEFAULT_INTERVAL, WEEK, SlotConfig, build_similarity, read_events
from .parallel import map_ordered
from .synth import SyntheticModel, generate_csv

log = logging.getLogger("tempocent")

MEASURES = [m.value for m in CentralityMeasure]


def _unit_interval(text: str) -> float:
    x = float(text)
    if not 0.0 <= x <= 1.0:
        raise argparse.ArgumentTypeError(f"expected a value in [0, 1], got {text}")
    return x


def _non_negative(text: str) -> float:
    x = float(text)
    if not x >= 0:
        raise argparse.ArgumentTypeError(f"expected a value >= 0, got {text}")
    return x


def _positive_int(text: str) -> int:
    x = int(text)
    if x < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return x


def _add_ingest_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--slot-duration", type=_positive_int, default=WEEK, help="slot length in seconds (default: one week)")
    p.add_argument("--interval", type=_positive_int, default=DEFAULT_INTERVAL, help="proximity sub-interval in seconds")
    p.add_argument("--origin", type=int, default=None, help="epoch of slot 0 (default: first event rounded down)")
    p.add_argument("--lenient", action="store_true", help="skip malformed lines with a warning")


def _add_centrality_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--measure", choices=MEASURES + ["all"], default="all")
    p.add_argument("--alpha", type=_unit_interval, default=0.5, help="history weight; 0 gives plain centrality")
    p.add_argument("--damping", type=_unit_interval, default=0.85)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--normalize", choices=["none", "max"], default="none")
    p.add_argument("--max-iters", type=_positive_int, default=1000)
    p.add_argument("--tolerance", type=float, default=1e-10)


def _add_clique_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--phi", type=float, default=1.0, help="fraction of a slot's cliques a common node must join")
    p.add_argument("--window", type=_positive_int, default=3, help="consecutive slots for a persistent sentinel")
    p.add_argument("--min-clique-size", type=_positive_int, default=1)
    p.add_argument("--algorithm", choices=["basic", "pivot"], default="pivot")
    p.add_argument("--clique-limit", type=_positive_int, default=DEFAULT_CLIQUE_LIMIT)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tempocent", description="Temporal contact-graph centrality and cliques.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="contact CSV -> registry.json + slot_<t>.json")
    p.add_argument("--input", required=True, type=Path)
    p.add_argument("--outdir", required=True, type=Path)
    _add_ingest_args(p)

    p = sub.add_parser("centrality", help="score ingested slots")
    p.add_argument("--input", required=True, type=Path, help="directory written by ingest")
    p.add_argument("--outdir", type=Path, help="default: the input directory")
    p.add_argument("--threshold", type=_non_negative, default=0.0)
    _add_centrality_args(p)

    p = sub.add_parser("cliques", help="maximal cliques, size histogram, sentinel nodes")
    p.add_argument("--input", required=True, type=Path, help="directory written by ingest")
    p.add_argument("--outdir", type=Path, help="default: the input directory")
    p.add_argument("--threshold", type=_non_negative, default=0.0)
    _add_clique_args(p)

    p = sub.add_parser("synth", help="write a seeded synthetic contact trace")
    p.add_argument("--output", type=Path, help="default: stdout")
    p.add_argument("--nodes", type=int, default=SyntheticModel.n_nodes)
    p.add_argument("--slots", type=int, default=SyntheticModel.n_slots)
    p.add_argument("--communities", type=_positive_int, default=SyntheticModel.n_communities)
    p.add_argument("--intra-rate", type=_non_negative, default=SyntheticModel.intra_rate)
    p.add_argument("--inter-rate", type=_non_negative, default=SyntheticModel.inter_rate)
    p.add_argument("--hubs", type=int, default=SyntheticModel.hub_count)
    p.add_argument("--hub-boost", type=_non_negative, default=SyntheticModel.hub_boost)
    p.add_argument("--slot-duration", type=_positive_int, default=WEEK)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("report", help="ingest, centrality and cliques in one go")
    p.add_argument("--input", required=True, type=Path)
    p.add_argument("--outdir", required=True, type=Path)
    p.add_argument("--threshold", type=_non_negative, default=0.0)
    p.add_argument("--seed", type=int, default=None, help="accepted for config symmetry; the pipeline is deterministic")
    _add_ingest_args(p)
    _add_centrality_args(p)
    _add_clique_args(p)
    return parser


def cmd_ingest(args) -> List[Path]:
    trace = read_events(args.input, strict=not args.lenient)
    for w in trace.warnings:
        log.warning("%s:%d: %s (line skipped)", args.input, w.lineno, w.message)
    if not trace.events:
        raise ValueError(f"{args.input}: no events")
    cfg = SlotConfig(args.slot_duration, args.interval, args.origin)
    sims = build_similarity(trace.events, trace.registry, cfg)
    args.outdir.mkdir(parents=True, exist_ok=True)
    written = [store.write_registry(args.outdir, trace.registry)]
    written += store.write_slots(args.outdir, sims)
    log.info("ingested %d events, %d nodes, %d slots", len(trace.events), len(trace.registry), len(sims))
    return written


def _write_all(outputs: Sequence[tuple]) -> List[Path]:
    written: List[Path] = []
    try:
        for path, text in outputs:
            store.atomic_write(path, text)
            written.append(path)
    except BaseException:
        for path in written:
            path.unlink(missing_ok=True)
        raise
    return written


def cmd_centrality(args) -> List[Path]:
    registry, slots = store.load_run(args.input)
    outdir = args.outdir or args.input
    outdir.mkdir(parents=True, exist_ok=True)
    measures = MEASURES if args.measure == "all" else [args.measure]
    power = PowerIterationConfig(args.max_iters, args.tolerance)

    def run(measure: str):
        if args.alpha == 0:
            return map_ordered(
                lambda g: compute_centrality(g, measure, args.threshold, args.damping, power), slots
            )
        return evolutionary_centrality(
            slots, measure, SmoothingConfig(args.alpha), args.threshold, args.damping, power
        )

    # everything is computed before the first write so a failure leaves no partial output
    outputs = []
    for measure in measures:
        for res in run(measure):
            rec = store.centrality_record(res, registry, args.alpha, args.normalize)
            name = f"centrality_{measure}_slot_{res.slot}.{args.format}"
            text = store.dumps(rec) if args.format == "json" else store.centrality_csv(rec)
            outputs.append((outdir / name, text))
    return _write_all(outputs)


def cmd_cliques(args) -> List[Path]:
    if not 0.0 < args.phi <= 1.0:
        raise ValueError(f"--phi must be in (0, 1], got {args.phi}")
    registry, slots = store.load_run(args.input)
    outdir = args.outdir or args.input
    outdir.mkdir(parents=True, exist_ok=True)
    enumerate_ = bron_kerbosch_pivot if args.algorithm == "pivot" else bron_kerbosch
    sets = map_ordered(lambda g: enumerate_(binarize(g, args.threshold), args.clique_limit), slots)
    sets = [s.at_least(args.min_clique_size) for s in sets]
    reports = sentinel_nodes(sets, args.phi, args.window)
    record = store.sentinel_record(reports, sets, registry, args.phi, args.window, args.min_clique_size)
    return _write_all([
        (outdir / "cliques.tsv", store.clique_lines(sets, registry)),
        (outdir / "histogram.csv", store.histogram_csv(clique_histogram(sets))),
        (outdir / "sentinels.json", store.dumps(record)),
    ])


def cmd_synth(args) -> None:
    model = SyntheticModel(
        n_nodes=args.nodes,
        n_slots=args.slots,
        n_communities=args.communities,
        intra_rate=args.intra_rate,
        inter_rate=args.inter_rate,
        hub_count=args.hubs,
        hub_boost=args.hub_boost,
        seed=args.seed,
        slot_duration=args.slot_duration,
    )
    text = generate_csv(model)
    if args.output is None:
        sys.stdout.write(text)
    else:
        store.atomic_write(args.output, text)


def cmd_report(args) -> List[Path]:
    written = cmd_ingest(args)
    run_dir = args.outdir
    args.input, args.outdir = run_dir, run_dir
    written += cmd_centrality(args)
    written += cmd_cliques(args)
    return written


COMMANDS = {
    "ingest": cmd_ingest,
    "centrality": cmd_centrality,
    "cliques": cmd_cliques,
    "synth": cmd_synth,
    "report": cmd_report,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        COMMANDS[args.command](args)
    except (OSError, ValueError, RuntimeError, KeyError) as exc:
        print(f"tempocent {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
