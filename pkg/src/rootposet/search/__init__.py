"""Exhaustive searches for candidate root posets."""

from .configs import RankConfiguration, rank_configurations
from .parallel import SearchResult, V1Spec, WorkUnit, run_search, run_unit, split_work
from .v1 import (
    PartialPoset,
    UpperPartRecord,
    V1Search,
    embed_in_skeleton,
    enumerate_upper_parts,
    h4_skeleton,
    search_v1,
)
from .v2 import SearchSpec, SearchStats, V2Search, dedupe, search_v2

__all__ = [
    "PartialPoset",
    "RankConfiguration",
    "SearchResult",
    "SearchSpec",
    "SearchStats",
    "UpperPartRecord",
    "V1Search",
    "V1Spec",
    "V2Search",
    "WorkUnit",
    "dedupe",
    "embed_in_skeleton",
    "enumerate_upper_parts",
    "h4_skeleton",
    "rank_configurations",
    "run_search",
    "run_unit",
    "search_v1",
    "search_v2",
    "split_work",
]
