"""Cover-variable search for H4 built on the fixed 60-element skeleton.

The skeleton fixes the ranks, a set of required covers and a set of forbidden
covers.  The remaining potential covers split into 37 variables among the
elements ``1..36`` (the lower part) and 14 among ``35..60`` (the upper part).
All ``2**14`` upper parts are tabulated once; the lower variables are then
enumerated depth first and each leaf is joined with the upper parts whose
statistics make the simple-free 2-antichain count come out right.

Lower variables are ordered from the top level (ranks 11 to 12) downwards, so
the checks on the upper ranks of the lower part fire early.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations
from typing import Callable, Iterable, Sequence

from .. import kernels
from ..invariants import check_properties, parse_properties
from ..poset import GradedPoset, bits, rank_vector
from ..profiles import get_profile
from ..rootdata import load_json
from .v2 import SearchStats, dedupe

Pair = tuple[int, int]

UPPER_START = 35  # first element of the upper part
LOWER_END = 36  # last element of the lower part
ORBIT_LENGTHS = frozenset({2, 3, 5, 30})
JOIN_TARGET = 133
THREE_ANTICHAIN_BOUND = 60


def _poset_from_cover_masks(covers: Sequence[int], rank: Sequence[int]) -> GradedPoset:
    # labels are rank-sorted and covers join consecutive ranks, so the masks
    # are already reduced and a single pass gives the closure
    below = []
    for c in covers:
        b = c
        for x in bits(c):
            b |= below[x]
        below.append(b)
    return GradedPoset(len(covers), covers, below, rank)


@dataclass(frozen=True)
class PartialPoset:
    """Ranked skeleton with required, forbidden and undecided covers.

    ``undecided`` lists the lower variables c1, c2, ... followed by the upper
    variables w1, w2, ...; a completion picks a subset of them.
    """

    n: int
    rank: tuple[int, ...]
    required: frozenset[Pair]
    forbidden: frozenset[Pair]
    lower_variables: tuple[Pair, ...]
    upper_variables: tuple[Pair, ...]

    def __post_init__(self):
        if self.required & self.forbidden:
            raise ValueError("a cover is both required and forbidden")

    @property
    def undecided(self) -> tuple[Pair, ...]:
        return self.lower_variables + self.upper_variables

    @cached_property
    def rank_vector(self) -> list[int]:
        return [self.rank.count(r) for r in range(1, max(self.rank) + 1)]

    def elements_of_rank(self, r: int) -> list[int]:
        return [i + 1 for i, x in enumerate(self.rank) if x == r]

    def completion(self, present: Iterable[Pair]) -> GradedPoset:
        covers = [0] * self.n
        for x, y in list(self.required) + list(present):
            covers[y - 1] |= 1 << (x - 1)
        return _poset_from_cover_masks(covers, self.rank)

    def assignment(self, P: GradedPoset) -> tuple[bool, ...] | None:
        """Values of the undecided covers in ``P``, or None if ``P`` is not a completion."""
        pairs = set(P.cover_pairs())
        if not self.required <= pairs or pairs & self.forbidden:
            return None
        values = tuple(c in pairs for c in self.undecided)
        if len(self.required) + sum(values) != len(pairs):
            return None
        return values


def _potential_covers(rank: Sequence[int]) -> list[Pair]:
    n = len(rank)
    return [(x, y) for x in range(1, n + 1) for y in range(x + 1, n + 1) if rank[y - 1] == rank[x - 1] + 1]


def h4_skeleton() -> PartialPoset:
    """The bundled H4 skeleton including the two predicted relations at 13."""
    data = load_json("h4_skeleton.json")
    rank = tuple(r + 1 for r, size in enumerate(data["rank_vector"]) for _ in range(size))
    required = frozenset(map(tuple, data["required"] + data["predicted_required"]))
    forbidden = frozenset(map(tuple, data["forbidden"] + data["predicted_forbidden"]))
    free = [p for p in _potential_covers(rank) if p not in required and p not in forbidden]
    lower = [p for p in free if p[1] <= LOWER_END]
    upper = [p for p in free if p[0] >= UPPER_START]
    if len(lower) + len(upper) != len(free):
        raise ValueError("skeleton has undecided covers across the split")
    # top level first, then by upper element, then lower element
    lower.sort(key=lambda p: (-rank[p[1] - 1], p[1], p[0]))
    upper.sort(key=lambda p: (rank[p[1] - 1], p[1], p[0]))
    return PartialPoset(len(rank), rank, required, forbidden, tuple(lower), tuple(upper))


# -- upper part -------------------------------------------------------------------


@dataclass(frozen=True)
class UpperPartRecord:
    """One completion of the covers among ``35..60``.

    ``present`` holds the chosen upper variables; ``poset`` is local, with
    element ``35`` as 1.  ``g35`` and ``g36`` count elements not above 35 and
    not above 36 respectively (the element itself counts as above).
    """

    present: tuple[Pair, ...]
    poset: GradedPoset = field(compare=False, repr=False)
    a2: int
    g35: int
    g36: int

    def recompute(self) -> tuple[int, int, int]:
        return _upper_stats(self.poset)


def _upper_stats(U: GradedPoset) -> tuple[int, int, int]:
    acs = kernels.antichains(U.below, U.above)
    a2 = sum(1 for a in acs if a.bit_count() == 2)
    up35 = U.above[0] | 1
    up36 = U.above[1] | 2
    return a2, U.n - up35.bit_count(), U.n - up36.bit_count()


def _upper_bad_orbit(U: GradedPoset, allowed) -> bool:
    """Whether some certified orbit of ``U`` has a length outside ``allowed``.

    Inside the full poset an antichain of the upper part has the same image
    exactly when its ideal contains both 35 and 36, so only orbits made of
    such antichains are certified.
    """
    acs = kernels.antichains(U.below, U.above)
    up35 = U.above[0] | 1
    up36 = U.above[1] | 2
    index = {a: j for j, a in enumerate(acs)}
    seen = bytearray(len(acs))
    for j, start in enumerate(acs):
        if seen[j]:
            continue
        length = 0
        certified = True
        a = start
        while True:
            seen[index[a]] = 1
            length += 1
            if not (a & up35 and a & up36):
                certified = False
            a = kernels.panyushev(U.below, a)
            if a == start:
                break
        if certified and length not in allowed:
            return True
    return False


def enumerate_upper_parts(skeleton: PartialPoset, orbit_lengths=ORBIT_LENGTHS) -> list[UpperPartRecord]:
    """All completions of the upper variables, filtered on certified orbit lengths.

    ``orbit_lengths=None`` keeps every completion.
    """
    offset = UPPER_START - 1
    size = skeleton.n - offset
    rank = [r - skeleton.rank[offset] + 1 for r in skeleton.rank[offset:]]
    base = [0] * size
    for x, y in skeleton.required:
        if x >= UPPER_START:
            base[y - 1 - offset] |= 1 << (x - 1 - offset)
    variables = skeleton.upper_variables
    out = []
    for choice in range(1 << len(variables)):
        covers = list(base)
        present = []
        for i in bits(choice):
            x, y = variables[i]
            covers[y - 1 - offset] |= 1 << (x - 1 - offset)
            present.append((x, y))
        U = _poset_from_cover_masks(covers, rank)
        if orbit_lengths is not None and _upper_bad_orbit(U, orbit_lengths):
            continue
        a2, g35, g36 = _upper_stats(U)
        out.append(UpperPartRecord(tuple(present), U, a2, g35, g36))
    return out


# -- lower part -------------------------------------------------------------------


def _bit(x: int) -> int:
    return 1 << (x - 1)


def _has_cover(covers: Sequence[int], x: int, y: int) -> bool:
    return bool(covers[y - 1] & _bit(x))


def _check_top_level(covers: Sequence[int]) -> bool:
    # 35 and 36 each cover something in 32..34, and each of 32..34 is covered
    lows = (32, 33, 34)
    if not all(any(_has_cover(covers, x, y) for x in lows) for y in (35, 36)):
        return False
    return all(any(_has_cover(covers, x, y) for y in (35, 36)) for x in lows)


def _check_level_9_10(covers: Sequence[int]) -> bool:
    if not (_has_cover(covers, 27, 29) or _has_cover(covers, 28, 29)):
        return False
    if not (_has_cover(covers, 27, 31) or _has_cover(covers, 28, 31)):
        return False
    # no 4-antichain among 26..31 (only direct covers relate them)
    for quad in combinations(range(26, 32), 4):
        if all(not _has_cover(covers, x, y) for x, y in combinations(quad, 2)):
            return False
    return True


def _check_level_5_6(covers: Sequence[int]) -> bool:
    return any(_has_cover(covers, x, y) for x in (14, 15) for y in (18, 19))


def _level_ends(skeleton: PartialPoset) -> dict[int, int]:
    """Depth at which all variables of each upper rank are decided, keyed by that rank."""
    ends = {}
    for depth, (_, y) in enumerate(skeleton.lower_variables, 1):
        ends[skeleton.rank[y - 1]] = depth
    return ends


class V1Search:
    """Depth-first run over the lower variables.

    ``pins`` fixes chosen variables (index into ``lower_variables`` to bool);
    unpinned ones are branched on.  Pruning follows the selected properties:
    the 3-antichain bound and the join equation need ``4``, the orbit-length
    check needs ``5-multiset``, and the antichain cap needs ``3``.  The three
    structural checkpoints always apply.
    """

    def __init__(
        self,
        properties="1-5",
        skeleton: PartialPoset | None = None,
        upper_records: Sequence[UpperPartRecord] | None = None,
        pins: dict[int, bool] | None = None,
    ):
        self.properties = parse_properties(properties) if isinstance(properties, str) else tuple(properties)
        self.skeleton = skeleton or h4_skeleton()
        self.profile = get_profile("H4")
        sel = set(self.properties)
        self.use_orbits = "5-multiset" in sel
        self.use_h4 = "4" in sel
        self.cap = self.profile.catalan if "3" in sel else -1
        if upper_records is None:
            upper_records = enumerate_upper_parts(self.skeleton, ORBIT_LENGTHS if self.use_orbits else None)
        self.groups: dict[tuple[int, int, int], list[UpperPartRecord]] = defaultdict(list)
        for rec in upper_records:
            self.groups[(rec.a2, rec.g35, rec.g36)].append(rec)
        self.pins = dict(pins or {})
        self.variables = self.skeleton.lower_variables
        self.stats = SearchStats()

        sk = self.skeleton
        self.lower_rank = sk.rank[:LOWER_END]
        base = [0] * LOWER_END
        for x, y in sk.required:
            if y <= LOWER_END:
                base[y - 1] |= _bit(x)
        self.base = base
        ends = _level_ends(sk)
        self.checkpoints: dict[int, list[tuple[str, Callable]]] = defaultdict(list)
        self.checkpoints[ends[12]].append(("checkpoint ranks 11-12", _check_top_level))
        self.checkpoints[ends[10]].append(("checkpoint ranks 9-10", _check_level_9_10))
        self.checkpoints[ends[6]].append(("checkpoint ranks 5-6", _check_level_5_6))
        self.upper_shift = UPPER_START - 1

    @property
    def free_variables(self) -> int:
        return sum(1 for i in range(len(self.variables)) if i not in self.pins)

    def _choices(self, depth: int) -> tuple[bool, ...]:
        if depth in self.pins:
            return (self.pins[depth],)
        return (False, True)

    def _walk(self, covers: list[int], depth: int, stop: int, out: list, prefix: list[bool]) -> None:
        self.stats.nodes += 1
        for reason, check in self.checkpoints.get(depth, ()):
            if not check(covers):
                self.stats.pruned[reason] += 1
                return
        if depth == stop:
            out.append(tuple(prefix))
            return
        x, y = self.variables[depth]
        for value in self._choices(depth):
            if value:
                covers[y - 1] |= _bit(x)
            prefix.append(value)
            self._walk(covers, depth + 1, stop, out, prefix)
            prefix.pop()
            if value:
                covers[y - 1] &= ~_bit(x)

    def _start(self, prefix: Sequence[bool]) -> list[int]:
        covers = list(self.base)
        for i, ((x, y), value) in enumerate(zip(self.variables, prefix)):
            if self.pins.get(i, value) != value:
                raise ValueError("prefix contradicts a pinned variable")
            if value:
                covers[y - 1] |= _bit(x)
        return covers

    def prefixes(self, depth: int) -> list[tuple[bool, ...]]:
        """Assignments of the first ``depth`` variables that survive the checkpoints."""
        out: list = []
        self._walk(list(self.base), 0, depth, out, [])
        return out

    def leaves(self, prefix: Sequence[bool] = ()) -> list[tuple[bool, ...]]:
        """Full lower assignments below ``prefix`` (the prefix's own checkpoints are rerun)."""
        out: list = []
        covers = self._start(prefix)
        self._walk_from(covers, list(prefix), out)
        return out

    def _walk_from(self, covers: list[int], prefix: list[bool], out: list) -> None:
        # checkpoints strictly inside the prefix; the one at its end runs in _walk
        depth = len(prefix)
        for d in range(1, depth):
            for reason, check in self.checkpoints.get(d, ()):
                if not check(covers):
                    self.stats.pruned[reason] += 1
                    return
        self._walk(covers, depth, len(self.variables), out, prefix)

    def lower_poset(self, values: Sequence[bool]) -> GradedPoset:
        covers = self._start(values)
        return _poset_from_cover_masks(covers, self.lower_rank)

    def join(self, L: GradedPoset, rec: UpperPartRecord) -> GradedPoset:
        covers = list(L.covers)
        U = rec.poset
        for y in range(2, U.n):  # 35 and 36 keep their lower covers
            c = 0
            for x in bits(U.covers[y]):
                c |= 1 << (x + self.upper_shift)
            covers.append(c)
        return _poset_from_cover_masks(covers, self.skeleton.rank)

    def leaf(self, values: Sequence[bool]) -> list[GradedPoset]:
        """Run the leaf checks and return the verified completions."""
        self.stats.leaves += 1
        L = self.lower_poset(values)
        acs = kernels.antichains(L.below, L.above, self.cap)
        if acs is None:
            self.stats.pruned["antichain count"] += 1
            return []
        if self.use_h4 and sum(1 for a in acs if a.bit_count() == 3) > THREE_ANTICHAIN_BOUND:
            self.stats.pruned["3-antichains"] += 1
            return []
        if self.use_orbits:
            top = _bit(35) | _bit(36)
            for length, _, certified in kernels.orbits(L.below, acs, top):
                if certified and length not in ORBIT_LENGTHS:
                    self.stats.pruned["orbit length"] += 1
                    return []
        # 2-antichains avoiding the simple roots and the two elements 35, 36
        middle = ((1 << 34) - 1) & ~0xF
        b2 = sum(1 for a in acs if a.bit_count() == 2 and not a & ~middle)
        l35 = (middle & ~L.below[34]).bit_count()
        l36 = (middle & ~L.below[35]).bit_count()
        found = []
        matched = False
        for (a2, g35, g36), recs in sorted(self.groups.items()):
            if self.use_h4 and a2 + b2 + l35 * g36 + l36 * g35 != JOIN_TARGET:
                continue
            matched = True
            for rec in recs:
                P = self.join(L, rec)
                if check_properties(P, self.profile, self.properties, parabolic=True).passed:
                    found.append(P)
        if not matched:
            self.stats.pruned["join"] += 1
        return found

    def run(self, prefix: Sequence[bool] = (), progress: Callable[[str], None] | None = None) -> list[GradedPoset]:
        found = []
        for values in self.leaves(prefix):
            got = self.leaf(values)
            found.extend(got)
            if got and progress:
                progress(f"found {len(found)} posets")
        return found


MAX_BOUNDED_FREE = 24


def search_v1(
    properties="1-5",
    skeleton: PartialPoset | None = None,
    upper_records: Sequence[UpperPartRecord] | None = None,
    pins: dict[int, bool] | None = None,
    unbounded: bool = False,
) -> list[GradedPoset]:
    """Cover-variable search on the skeleton, deduplicated up to isomorphism.

    Without ``unbounded`` the run is refused when more than
    ``MAX_BOUNDED_FREE`` lower variables are free: the full tree has 2**37
    leaves.
    """
    search = V1Search(properties, skeleton, upper_records, pins)
    if not unbounded and search.free_variables > MAX_BOUNDED_FREE:
        raise ValueError(
            f"{search.free_variables} free variables; pin some or pass unbounded=True"
        )
    return dedupe(search.run())


# -- relabelling onto the skeleton ----------------------------------------------------


def embed_in_skeleton(P: GradedPoset, skeleton: PartialPoset | None = None) -> GradedPoset | None:
    """A relabelling of ``P`` that completes the skeleton, or None if none exists.

    Ranks are matched bottom-up; at each rank every bijection onto the
    skeleton labels is tried against the required and forbidden covers to the
    rank below.
    """
    sk = skeleton or h4_skeleton()
    if rank_vector(P) != sk.rank_vector:
        return None
    by_rank_p = [[i for i in range(P.n) if P.rank[i] == r] for r in range(1, max(P.rank) + 1)]
    by_rank_s = [[i - 1 for i in sk.elements_of_rank(r)] for r in range(1, max(sk.rank) + 1)]
    req = {(x - 1, y - 1) for x, y in sk.required}
    forb = {(x - 1, y - 1) for x, y in sk.forbidden}
    image: dict[int, int] = {}

    def fits(r: int) -> bool:
        for y in by_rank_p[r]:
            for x in by_rank_p[r - 1]:
                pair = (image[x], image[y])
                has = bool(P.covers[y] >> x & 1)
                if (pair in req and not has) or (pair in forb and has):
                    return False
        return True

    def place(r: int) -> bool:
        if r == len(by_rank_p):
            return True
        for perm in permutations(by_rank_s[r]):
            for src, dst in zip(by_rank_p[r], perm):
                image[src] = dst
            if (r == 0 or fits(r)) and place(r + 1):
                return True
        for src in by_rank_p[r]:
            image.pop(src, None)
        return False

    if not place(0):
        return None
    pairs = [(image[x] + 1, image[y] + 1) for y in range(P.n) for x in bits(P.covers[y])]
    covers = [0] * P.n
    for x, y in pairs:
        covers[y - 1] |= _bit(x)
    return _poset_from_cover_masks(covers, sk.rank)


def lower_pins(skeleton: PartialPoset, P: GradedPoset, keep_free: Iterable[int] = ()) -> dict[int, bool]:
    """Pin every lower variable to its value in the completion ``P`` except ``keep_free``."""
    values = skeleton.assignment(P)
    if values is None:
        raise ValueError("poset is not a completion of the skeleton")
    free = set(keep_free)
    return {i: v for i, v in enumerate(values[: len(skeleton.lower_variables)]) if i not in free}


def upper_choice(skeleton: PartialPoset, P: GradedPoset) -> tuple[Pair, ...]:
    values = skeleton.assignment(P)
    if values is None:
        raise ValueError("poset is not a completion of the skeleton")
    k = len(skeleton.lower_variables)
    return tuple(p for p, v in zip(skeleton.upper_variables, values[k:]) if v)
