"""Run-length encoded bit-parallel exact string matching."""

from .matchers import (
    DEFAULT_BACKEND,
    IncompatibleSourceError,
    SearchStats,
    classic_bndm,
    classic_shift_and,
    naive_search,
    rl_bndm,
    rl_shift_and,
    search,
    single_symbol_match,
    suffix_prefix_lengths,
)
from .rle import Run, RunSeq, runs_of
from .tables import (
    EmptyPatternError,
    SingleRunPatternError,
    build_prefix_tables,
    build_suffix_tables,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_BACKEND",
    "EmptyPatternError",
    "IncompatibleSourceError",
    "Run",
    "RunSeq",
    "SearchStats",
    "SingleRunPatternError",
    "build_prefix_tables",
    "build_suffix_tables",
    "classic_bndm",
    "classic_shift_and",
    "naive_search",
    "rl_bndm",
    "rl_shift_and",
    "runs_of",
    "search",
    "single_symbol_match",
    "suffix_prefix_lengths",
]
