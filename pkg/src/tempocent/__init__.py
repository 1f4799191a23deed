"""Centrality, evolutionary centrality and maximal cliques on temporal contact graphs."""

from .centrality import (
    CentralityMeasure,
    CentralityResult,
    ConvergenceError,
    PowerIterationConfig,
    betweenness_centrality,
    closeness_centrality,
    compute_centrality,
    degree_centrality,
    eigenvector_centrality,
    pagerank_centrality,
)
from .cliques import (
    CliqueLimitError,
    CliqueSet,
    SentinelReport,
    bron_kerbosch,
    bron_kerbosch_pivot,
    clique_histogram,
    sentinel_nodes,
)
from .evolutionary import SmoothingConfig, evolutionary_centrality, smooth_adjacency
from .graph import (
    INF,
    BinaryGraph,
    InvalidNodeError,
    NodeRegistry,
    ShapeError,
    SlotGraph,
    binarize,
    connected_components,
    shortest_path_lengths,
)
from .ingest import (
    ContactEvent,
    ParseError,
    SimilarityMatrix,
    SlotConfig,
    build_similarity,
    parse_events,
    read_events,
    to_slot_graphs,
)
from .synth import SyntheticModel, generate_csv, generate_events

__version__ = "0.1.0"
