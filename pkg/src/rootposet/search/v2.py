"""Rank-by-rank enumeration of candidate root posets.

Each step stacks a new rank onto the current poset by choosing a cover
pattern from :func:`rank_configurations`.  Because the ranks built so far form
a down-set of every completion, several statistics of the final poset are
bounded (or already fixed) by those of the partial poset:

* every antichain and every order ideal of the partial poset survives, so the
  H-triangle entries, the antichain count and the ideal-size histogram are
  lower bounds for the final values;
* each rank still to come adds its own antichains, none containing a simple
  element, so those counts are added to the ``k = 0`` row before comparing;
* every later element covers one on the current top rank, so an ideal
  reaching past it is larger than the smallest principal ideal there; up to
  that size the histogram is already exact;
* once every element of the top rank lies above all minimal elements, no
  later element is incomparable to a minimal one, so the H-triangle rows with
  ``k >= 1`` are final;
* every level covers its whole lower rank, so each later rank has an element
  above any simple the top rank reaches; an antichain of ``k`` simples and one
  later element therefore needs ``k`` simples some top element misses, and
  there are at most ``size - 1`` such later elements per rank;
* an antichain avoiding the top rank has the same Panyushev image in every
  completion, so orbits made only of such antichains are final ("certified").
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .. import kernels
from ..canon import canonical_form, canonical_poset
from ..invariants import check_properties, ideal_size_genfun, parse_properties
from ..poset import GradedPoset, bits, rank_vector
from ..profiles import RootSystemProfile, get_profile
from .configs import RankConfiguration, rank_configurations

Prefix = tuple[int, ...]


@dataclass(frozen=True)
class SearchSpec:
    """Everything a worker needs to rerun part of a search.

    ``properties`` are selection tokens as in :func:`parse_properties`.
    With ``prune`` off, only the final property check filters results.
    ``parabolic`` adds the parabolic-subposet part of Property 1 to the final
    check.  ``ideal_targets`` replaces the Property-6 target by a set of
    admissible ideal-size sequences (any one may match).  A positive
    ``symmetry_depth`` expands the tree that many levels and keeps one prefix
    per isomorphism class of the partial poset before descending further.
    """

    profile: str
    properties: tuple[str, ...]
    prune: bool = True
    parabolic: bool = False
    ideal_targets: tuple[tuple[int, ...], ...] | None = None
    seed: tuple[int, tuple[tuple[int, int], ...]] | None = None
    symmetry_depth: int = 0

    @classmethod
    def make(cls, profile: str, properties, **kw) -> SearchSpec:
        if isinstance(properties, str):
            properties = parse_properties(properties)
        seed = kw.pop("seed", None)
        if isinstance(seed, GradedPoset):
            seed = (seed.n, tuple(seed.cover_pairs()))
        targets = kw.pop("ideal_targets", None)
        if targets is not None:
            targets = tuple(tuple(t) for t in targets)
        return cls(profile, tuple(properties), seed=seed, ideal_targets=targets, **kw)


@dataclass
class SearchStats:
    nodes: int = 0
    leaves: int = 0
    pruned: Counter = field(default_factory=Counter)

    @classmethod
    def from_kernel(cls, raw: dict) -> SearchStats:
        pruned = Counter({k: v for k, v in raw.items() if k not in ("nodes", "leaves") and v})
        return cls(raw["nodes"], raw["leaves"], pruned)

    def merge(self, other: SearchStats) -> None:
        self.nodes += other.nodes
        self.leaves += other.leaves
        self.pruned.update(other.pruned)

    def as_dict(self) -> dict:
        return {"nodes": self.nodes, "leaves": self.leaves, "pruned": dict(sorted(self.pruned.items()))}


def _pad(rows: Sequence[Sequence[int]], width: int) -> list[list[int]]:
    return [list(r) + [0] * (width - len(r)) for r in rows]


def _ratio(x: Fraction) -> tuple[int, int]:
    return x.numerator, x.denominator


class V2Search:
    """Search tree for one :class:`SearchSpec`.

    Nodes are identified by the sequence of configuration indices chosen
    since the seed.  The traversal itself runs in ``kernels.v2_dfs``.
    """

    def __init__(self, spec: SearchSpec, profile: RootSystemProfile | None = None, backend=None):
        self.spec = spec
        self.profile = profile or get_profile(spec.profile)
        self.kernels = backend or kernels
        sel = set(spec.properties)
        prune = spec.prune
        self.n = self.profile.n
        self.sizes = self.profile.expected_rank_vector
        self.total = sum(self.sizes)
        if self.total > 64:
            raise ValueError("posets are limited to 64 elements")
        self.stats = SearchStats()
        width = self.total + 1

        forbid = None
        self.targets: dict = {}
        if prune and "3" in sel:
            self.targets["cap"] = self.profile.catalan
        if prune and "4" in sel:
            tri = _pad(self.profile.h_triangle, width)
            self.targets["tri_target"] = tri
            if all(tri[k][self.n] == 0 for k in range(self.n)):
                forbid = self.n
        if prune and "5-multiset" in sel:
            counts = Counter(self.profile.orbit_multiset)
            self.targets["orbit_allowed"] = [counts[length] for length in range(max(counts) + 1)]
        if prune and "5a" in sel:
            self.targets["avg_a"] = _ratio(self.profile.homomesy_average)
        if prune and "5b" in sel:
            self.targets["avg_b"] = _ratio(self.profile.restricted_average)
        if prune and "6" in sel:
            if spec.ideal_targets is not None:
                targets = [list(t) for t in spec.ideal_targets]
            else:
                targets = [self.profile.ideal_genfun_target()]
            self.targets["ideal_targets"] = [t + [0] * (width - len(t)) for t in targets]

        self.seed = self._seed()
        self.configs: list[tuple[RankConfiguration, ...]] = [
            rank_configurations(
                self.sizes[r],
                self.sizes[r + 1],
                forbid=forbid,
                exempt_lower=(r == 0),
                require_lower_covered=prune,
            )
            for r in range(len(self.sizes) - 1)
        ]
        self.patterns = [[c.pattern for c in level] for level in self.configs]

    def _seed(self) -> tuple[list[int], list[int]]:
        if self.spec.seed is None:
            k = self.sizes[0]
            return [0] * k, [0] * k
        from ..poset import build_poset

        P = build_poset(*self.spec.seed)
        rv = rank_vector(P)
        if rv != self.sizes[: len(rv)]:
            raise ValueError(f"seed rank vector {rv} is not a prefix of {self.sizes}")
        return list(P.covers), list(P.below)

    def _dfs(self, prefix: Prefix, check_root: bool, stop_depth: int):
        items, raw = self.kernels.v2_dfs(
            self.sizes,
            self.patterns,
            self.seed[0],
            self.seed[1],
            prefix=tuple(prefix),
            check_root=check_root,
            stop_depth=stop_depth,
            **self.targets,
        )
        self.stats.merge(SearchStats.from_kernel(raw))
        return items

    def poset(self, covers: Sequence[int]) -> GradedPoset:
        rank = [r + 1 for r, size in enumerate(self.sizes) for _ in range(size)]
        below = []
        for y, c in enumerate(covers):
            b = c
            for x in bits(c):
                b |= below[x]
            below.append(b)
        return GradedPoset(self.total, covers, below, rank)

    def accept(self, P: GradedPoset) -> bool:
        """Mandatory final verification."""
        sel = self.spec.properties
        if self.spec.ideal_targets is not None and "6" in sel:
            sel = tuple(s for s in sel if s != "6")
            got = ideal_size_genfun(P).coeffs
            if not any(list(t[: len(got)]) == got and not any(t[len(got):]) for t in self.spec.ideal_targets):
                return False
        return check_properties(P, self.profile, sel, parabolic=self.spec.parabolic).passed

    def prefixes(self, depth: int) -> list[Prefix]:
        """Surviving choice sequences of the given length (shorter where the tree ends first)."""
        return self._dfs((), True, depth)

    def partial(self, prefix: Prefix) -> GradedPoset:
        """The seed with the ranks chosen by ``prefix`` stacked on top."""
        covers, below = list(self.seed[0]), list(self.seed[1])
        depth = len(self._seed_ranks())
        for idx in prefix:
            lo = sum(self.sizes[: depth - 1])
            for m in self.patterns[depth - 1][idx]:
                c = m << lo
                b = c
                for x in bits(c):
                    b |= below[x]
                covers.append(c)
                below.append(b)
            depth += 1
        rank = [r + 1 for r, size in enumerate(self.sizes[: depth]) for _ in range(size)]
        return GradedPoset(len(covers), covers, below, rank)

    def _seed_ranks(self) -> list[int]:
        n, acc = len(self.seed[0]), 0
        for r, size in enumerate(self.sizes):
            if acc == n:
                return self.sizes[:r]
            acc += size
        return self.sizes

    def units(self, depth: int | None = None) -> list[Prefix]:
        """Work units: surviving prefixes, one per isomorphism class of partial poset.

        Isomorphic partial posets have isomorphic subtrees, because the
        configuration lists and every pruning test are invariant under
        relabelling, so dropping duplicates loses no result up to isomorphism.
        """
        depth = self.spec.symmetry_depth if depth is None else depth
        if depth <= 0:
            return [()]
        # reduce one level at a time so only representatives are expanded
        level: list[Prefix] = [()]
        for d in range(1, depth + 1):
            keep: dict = {}
            for parent in level:
                for prefix in self._dfs(parent, not parent, d):
                    keep.setdefault(canonical_form(self.partial(prefix)), tuple(prefix))
            level = sorted(keep.values())
        return level

    def run(self, prefix: Prefix = (), progress: Callable[[str], None] | None = None) -> list[GradedPoset]:
        """Accepted completions below ``prefix``; a nonempty prefix is taken as already checked."""
        found = []
        for covers in self._dfs(prefix, not prefix, -1):
            P = self.poset(covers)
            if self.accept(P):
                found.append(P)
                if progress:
                    progress(f"found poset {len(found)}")
        return found

    def run_all(self, progress: Callable[[str], None] | None = None) -> list[GradedPoset]:
        """Run every work unit in order."""
        units = self.units()
        found = []
        for i, unit in enumerate(units, 1):
            found.extend(self.run(unit))
            if progress:
                progress(f"unit {i}/{len(units)} done, {len(found)} found")
        return found


def dedupe(posets) -> list[GradedPoset]:
    """One canonical representative per isomorphism class, sorted by canonical form."""
    forms = {}
    for P in posets:
        forms.setdefault(canonical_form(P), P)
    return [canonical_poset(forms[f]) for f in sorted(forms)]


def search_v2(profile, properties="1-4", seed=None, prune: bool = True, parabolic: bool = False, **kw) -> list[GradedPoset]:
    """Single-process rank-configuration search; see :class:`SearchSpec` for options."""
    name = profile if isinstance(profile, str) else profile.type_name
    spec = SearchSpec.make(name, properties, seed=seed, prune=prune, parabolic=parabolic, **kw)
    search = V2Search(spec, None if isinstance(profile, str) else profile)
    return dedupe(search.run_all())
