"""Work splitting and a process-pool runner for both searches.

A work unit is a fixed prefix of decisions.  Units share nothing but their
immutable spec, and results are merged by canonical form and sorted, so the
output does not depend on the worker count or completion order.
"""

from __future__ import annotations

import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from ..canon import canonical_form
from ..poset import GradedPoset, build_poset
from .v1 import ORBIT_LENGTHS, V1Search, enumerate_upper_parts, h4_skeleton
from .v2 import SearchSpec, SearchStats, V2Search


@dataclass(frozen=True)
class V1Spec:
    """Parameters of a cover-variable run; ``pins`` are (variable index, value) pairs."""

    properties: tuple[str, ...]
    pins: tuple[tuple[int, bool], ...] = ()


@dataclass(frozen=True)
class WorkUnit:
    spec: SearchSpec | V1Spec
    prefix: tuple


@dataclass
class SearchResult:
    posets: list[GradedPoset]
    stats: SearchStats
    units: int
    wall_time: float


@lru_cache(maxsize=2)
def _upper_records(filtered: bool):
    return tuple(enumerate_upper_parts(h4_skeleton(), ORBIT_LENGTHS if filtered else None))


def _v1_search(spec: V1Spec) -> V1Search:
    filtered = "5-multiset" in spec.properties
    return V1Search(spec.properties, upper_records=_upper_records(filtered), pins=dict(spec.pins))


def split_work(spec: SearchSpec | V1Spec, prefix_depth: int = 0) -> list[WorkUnit]:
    """Independent units covering the whole search.

    For the rank-configuration search with a positive ``symmetry_depth``
    the split goes at least that deep and isomorphic prefixes are merged.
    """
    return _split(spec, prefix_depth)[0]


def _split(spec, prefix_depth: int) -> tuple[list[WorkUnit], SearchStats]:
    if prefix_depth < 0:
        raise ValueError("prefix depth must be nonnegative")
    if isinstance(spec, V1Spec):
        search = _v1_search(spec)
        if prefix_depth > len(search.variables):
            raise ValueError("prefix depth exceeds the number of cover variables")
        prefixes = search.prefixes(prefix_depth) if prefix_depth else [()]
        return [WorkUnit(spec, p) for p in prefixes], search.stats
    search = V2Search(spec)
    if prefix_depth > len(search.sizes) - 1:
        raise ValueError("prefix depth exceeds the number of ranks")
    depth = max(prefix_depth, spec.symmetry_depth)
    if spec.symmetry_depth > 0:
        prefixes = search.units(depth)
    else:
        prefixes = search.prefixes(depth) if depth else [()]
    return [WorkUnit(spec, tuple(p)) for p in prefixes], search.stats


def run_unit(unit: WorkUnit) -> tuple[list[tuple], dict]:
    """Run one unit; returns canonical forms of the accepted posets and the stats."""
    if isinstance(unit.spec, V1Spec):
        search = _v1_search(unit.spec)
        found = search.run(unit.prefix)
    else:
        search = V2Search(unit.spec)
        found = search.run(unit.prefix)
    return sorted({canonical_form(P) for P in found}), search.stats.as_dict()


def _stats_from_dict(d: dict) -> SearchStats:
    return SearchStats(d["nodes"], d["leaves"], Counter(d["pruned"]))


def run_search(
    spec: SearchSpec | V1Spec,
    prefix_depth: int = 0,
    workers: int = 1,
    progress: Callable[[str], None] | None = None,
) -> SearchResult:
    """Split, run and merge.  ``workers <= 1`` runs in this process."""
    start = time.perf_counter()
    units, stats = _split(spec, prefix_depth)
    if progress:
        progress(f"{len(units)} work units")
    forms: set = set()
    if workers <= 1:
        results = map(run_unit, units)
        pool = None
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        results = pool.map(run_unit, units)
    try:
        for i, (unit_forms, unit_stats) in enumerate(results, 1):
            forms.update(unit_forms)
            stats.merge(_stats_from_dict(unit_stats))
            if progress:
                progress(f"unit {i}/{len(units)} done, {len(forms)} distinct posets so far")
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)
    posets = [build_poset(n, pairs) for n, pairs in sorted(forms)]
    return SearchResult(posets, stats, len(units), time.perf_counter() - start)
