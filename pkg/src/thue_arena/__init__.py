"""Two-player repetition games: simulation, compressed game logs with exact
decoders, weighted walk censuses, and generating-function analysis."""

from .engines import (
    GameConfig,
    GameRun,
    MoveRecord,
    difference_sequence,
    extract_heights,
    play_erase_game,
    simulate_nonrep_search,
)
from .gf import (
    IsolatedRoot,
    PowerSeries,
    certify_bound,
    defining_polynomial,
    discriminant_wrt_t,
    growth_rate_estimate,
    isolate_positive_roots,
    resultant_wrt_t,
    solve_series,
)
from .logs import (
    DecodeError,
    LogValidationError,
    ReducedGameLog,
    TypedSearchLog,
    decode_erase_log,
    decode_search_log,
    encode_erase_log,
    encode_search_log,
    validate_log,
)
from .sequences import (
    GameSequence,
    RepetitionReport,
    append_and_reduce,
    find_suffix_repetition,
    is_valid,
)
from .strategies import (
    BEN_STRATEGIES,
    ConfigurationError,
    RandomSource,
    TurnOrderError,
    ann_erase_choice,
    ann_nonrep_choice,
    ann_nonrep_exclusions,
    ben_choose,
)
from .walks import (
    ERASE_WALKS,
    SEARCH_WALKS,
    CensusTable,
    WalkSpec,
    count_walks_bruteforce,
    count_walks_dp,
    count_walks_recurrence,
    count_walks_with_sum,
)

__version__ = "0.1.0"

__all__ = [
    "BEN_STRATEGIES",
    "CensusTable",
    "ConfigurationError",
    "DecodeError",
    "ERASE_WALKS",
    "GameConfig",
    "GameRun",
    "GameSequence",
    "IsolatedRoot",
    "LogValidationError",
    "MoveRecord",
    "PowerSeries",
    "RandomSource",
    "ReducedGameLog",
    "RepetitionReport",
    "SEARCH_WALKS",
    "TurnOrderError",
    "TypedSearchLog",
    "WalkSpec",
    "ann_erase_choice",
    "ann_nonrep_choice",
    "ann_nonrep_exclusions",
    "append_and_reduce",
    "ben_choose",
    "certify_bound",
    "count_walks_bruteforce",
    "count_walks_dp",
    "count_walks_recurrence",
    "count_walks_with_sum",
    "decode_erase_log",
    "decode_search_log",
    "defining_polynomial",
    "difference_sequence",
    "discriminant_wrt_t",
    "encode_erase_log",
    "encode_search_log",
    "extract_heights",
    "find_suffix_repetition",
    "growth_rate_estimate",
    "is_valid",
    "isolate_positive_roots",
    "play_erase_game",
    "resultant_wrt_t",
    "simulate_nonrep_search",
    "solve_series",
    "validate_log",
]
