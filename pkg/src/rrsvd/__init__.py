"""Offense/defense analysis of round-robin tournaments via the singular value decomposition."""
from ._accel import NUMBA_ENABLED, backend_name
from .analysis import (
    BoredomReport,
    CorrectionAnalysis,
    ExplainedFraction,
    OffenseDefenseScores,
    RankingComparison,
    SignGroups,
    boredom_ranking,
    compare_rankings,
    correction_analysis,
    explained_fraction,
    offense_defense_scores,
    predicted_matrix,
)
from .errors import (
    ConvergenceError,
    DegenerateInputError,
    ParameterError,
    ParseError,
    RRSVDError,
    ShapeError,
    TournamentError,
)
from .groups import GROUP_LETTERS, embedded_group
from .linalg import (
    SvdResult,
    as_matrix,
    frobenius_norm,
    matmul,
    rank_one,
    sign_normalize,
    svd,
    truncated_sum,
)
from .polar import DrawTable, PolarFactors, hypothetical_scores, polar_factors
from .report import AnalysisReport, analyze, to_dict, to_json, to_text
from .standings import StandingsRow, StandingsTable, compute_standings
from .tournament import (
    MatchResult,
    PerformanceMatrix,
    Team,
    Tournament,
    build_performance_matrix,
    goals_allowed_vector,
    goals_scored_vector,
    load_tournament,
    normalized,
    parse_tournament,
    serialize_tournament,
)

__version__ = "0.1.0"
