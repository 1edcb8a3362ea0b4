"""Daily mobility motifs, motif-level network construction, and
station-importance ranking for transit origin-destination data."""

from .centrality import (
    ScoreVector,
    SolverConfig,
    current_flow_closeness,
    eigenvector_centrality,
    pagerank,
    project_memory_scores,
    weighted_clustering,
)
from .errors import (
    ConfigurationError,
    ConvergenceError,
    DataFormatError,
    EvaluationError,
    MotifnetError,
    SolverError,
)
from .evaluation import (
    EvalReport,
    RankingTable,
    evaluate,
    ndcg,
    pearson_rank_vs_score,
    ranking_improvement,
    truth_ranking,
)
from .ingest import (
    IngestConfig,
    ODRecord,
    PassengerDay,
    RejectedRow,
    Station,
    load_stations,
    parse_records,
    partition_by_day,
    truth_scores,
)
from .motifs import (
    CanonicalMotif,
    DailyMotif,
    build_motif,
    canonical_form,
    motif_class_counts,
    motif_distribution,
)
from .netbuild import (
    MemoryNetwork,
    WeightedNetwork,
    build_classic,
    build_debruijn,
    build_motif_based,
    build_motif_wise,
    symmetrize,
)
from .synth import SynthConfig, generate

__version__ = "0.1.0"

__all__ = [
    "CanonicalMotif",
    "ConfigurationError",
    "ConvergenceError",
    "DailyMotif",
    "DataFormatError",
    "EvalReport",
    "EvaluationError",
    "IngestConfig",
    "MemoryNetwork",
    "MotifnetError",
    "ODRecord",
    "PassengerDay",
    "RankingTable",
    "RejectedRow",
    "ScoreVector",
    "SolverConfig",
    "SolverError",
    "Station",
    "SynthConfig",
    "WeightedNetwork",
    "build_classic",
    "build_debruijn",
    "build_motif",
    "build_motif_based",
    "build_motif_wise",
    "canonical_form",
    "current_flow_closeness",
    "eigenvector_centrality",
    "evaluate",
    "generate",
    "load_stations",
    "motif_class_counts",
    "motif_distribution",
    "ndcg",
    "pagerank",
    "parse_records",
    "partition_by_day",
    "pearson_rank_vs_score",
    "project_memory_scores",
    "ranking_improvement",
    "symmetrize",
    "truth_ranking",
    "truth_scores",
    "weighted_clustering",
]
