"""netmeta: birth/death analysis of evolving undirected networks.

Snapshot pairs are split into steady, born and dead nodes and six classes
of changed edges; motif censuses, metabolism rates, degree-distribution
statistics and M3 mutation events are computed over whole series.
"""

__version__ = "0.1.0"

from .errors import NetmetaError
from .evolution import EgoDelta, EvolutionDelta, classify_pair, ego_delta
from .graph import (
    Edge,
    Snapshot,
    SnapshotSeries,
    build_snapshot,
    degree_sequence,
    neighbors,
    read_snapshot,
    write_snapshot,
)
from .ingest import (
    AsPath,
    IngestReport,
    Rejection,
    aggregate_window,
    ingest_files,
    parse_edgelist,
    paths_to_edges,
    sanitize_aspath,
)
from .metrics import (
    MutationEvent,
    PowerLawFit,
    TrendFit,
    detect_mutations,
    exp_trend_fit,
    metabolism_rate,
    node_trajectory,
    powerlaw_fit,
    structure_entropy,
)
from .motifs import CensusTable, MotifCounts, brute_census, delta_census, m3_rates, static_census
from .synth import SynthConfig, SynthTruth, generate

__all__ = [
    "AsPath", "CensusTable", "Edge", "EgoDelta", "EvolutionDelta", "IngestReport",
    "MotifCounts", "MutationEvent", "NetmetaError", "PowerLawFit", "Rejection",
    "Snapshot", "SnapshotSeries", "SynthConfig", "SynthTruth", "TrendFit",
    "aggregate_window", "brute_census", "build_snapshot", "classify_pair",
    "degree_sequence", "delta_census", "detect_mutations", "ego_delta",
    "exp_trend_fit", "generate", "ingest_files", "m3_rates", "metabolism_rate",
    "neighbors", "node_trajectory", "parse_edgelist", "paths_to_edges",
    "powerlaw_fit", "read_snapshot", "sanitize_aspath", "static_census",
    "structure_entropy", "write_snapshot",
]
