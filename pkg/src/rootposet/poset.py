"""Graded posets on at most 64 elements, stored as bit masks.

Elements are numbered ``1..n`` in the public API and occupy bits ``0..n-1``
internally.  Element numbers are rank-sorted: ``rank(i) <= rank(j)`` for
``i < j``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from . import kernels

MAX_ELEMENTS = 64


class PosetError(ValueError):
    """Invalid poset input: cycles, bad indices, or too many elements."""


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(elements: Iterable[int]) -> int:
    """Mask of 1-based element numbers."""
    m = 0
    for x in elements:
        m |= 1 << (x - 1)
    return m


def elements_of(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in bits(mask))


@dataclass(frozen=True)
class Antichain:
    mask: int

    @property
    def members(self) -> tuple[int, ...]:
        return elements_of(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __repr__(self) -> str:
        return f"Antichain({set(self.members) or '{}'})"


@dataclass(frozen=True)
class OrderIdeal:
    mask: int

    @property
    def members(self) -> tuple[int, ...]:
        return elements_of(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __repr__(self) -> str:
        return f"OrderIdeal({set(self.members) or '{}'})"


class GradedPoset:
    """Immutable finite poset with rank-sorted elements.

    ``covers[i]`` is the mask of elements covered by ``i`` and ``below[i]`` the
    mask of all elements strictly below ``i`` (0-based bit indices).  ``rank``
    is the length of the longest chain ending at the element, so minimal
    elements have rank 1; it agrees with the grading whenever
    :func:`is_graded` holds.
    """

    __slots__ = ("n", "covers", "below", "rank", "__dict__")

    def __init__(self, n: int, covers: Sequence[int], below: Sequence[int], rank: Sequence[int]):
        self.n = n
        self.covers = tuple(covers)
        self.below = tuple(below)
        self.rank = tuple(rank)

    @cached_property
    def above(self) -> tuple[int, ...]:
        up = [0] * self.n
        for y in range(self.n):
            for x in bits(self.below[y]):
                up[x] |= 1 << y
        return tuple(up)

    @cached_property
    def full(self) -> int:
        return (1 << self.n) - 1

    def cover_pairs(self) -> list[tuple[int, int]]:
        """Covering relations as sorted 1-based ``(lower, upper)`` pairs."""
        return sorted((x + 1, y + 1) for y in range(self.n) for x in bits(self.covers[y]))

    def leq(self, x: int, y: int) -> bool:
        return x == y or bool(self.below[y - 1] >> (x - 1) & 1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedPoset):
            return NotImplemented
        return self.n == other.n and self.covers == other.covers

    def __hash__(self) -> int:
        return hash((self.n, self.covers))

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"GradedPoset(n={self.n}, covers={len(self.cover_pairs())})"


def _from_relation(n: int, lower: Sequence[int]) -> GradedPoset:
    """Build from 0-based masks ``lower[y]`` of elements related below ``y``.

    The relation may be any acyclic relation; it is closed transitively and
    reduced, and the elements are relabelled rank-sorted (stable).
    """
    indeg = [m.bit_count() for m in lower]
    ups: list[list[int]] = [[] for _ in range(n)]
    for y in range(n):
        for x in bits(lower[y]):
            ups[x].append(y)
    order = [i for i in range(n) if indeg[i] == 0]
    for x in order:
        for y in ups[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                order.append(y)
    if len(order) != n:
        raise PosetError("relation contains a cycle")
    below = [0] * n
    rank = [1] * n
    for y in order:
        acc = 0
        r = 1
        for x in bits(lower[y]):
            acc |= below[x] | (1 << x)
            r = max(r, rank[x] + 1)
        below[y] = acc
        rank[y] = r
    perm = sorted(range(n), key=lambda i: (rank[i], i))
    if perm != list(range(n)):
        pos = {old: new for new, old in enumerate(perm)}

        def move(m: int) -> int:
            return sum(1 << pos[i] for i in bits(m))

        below = [move(below[old]) for old in perm]
        rank = [rank[old] for old in perm]
    covers = []
    for y in range(n):
        indirect = 0
        for z in bits(below[y]):
            indirect |= below[z]
        covers.append(below[y] & ~indirect)
    return GradedPoset(n, covers, below, rank)


def build_poset(n: int, cover_list: Iterable[tuple[int, int]]) -> GradedPoset:
    """Poset on ``1..n`` generated by the pairs ``(lower, upper)``.

    Any acyclic relation is accepted; the result stores its transitive
    reduction.  Elements that are not rank-sorted in the input are relabelled
    by (rank, input number).
    """
    if not 1 <= n <= MAX_ELEMENTS:
        raise PosetError(f"poset size {n} outside 1..{MAX_ELEMENTS}")
    lower = [0] * n
    for x, y in cover_list:
        if not (1 <= x <= n and 1 <= y <= n):
            raise PosetError(f"pair ({x}, {y}) out of range 1..{n}")
        if x == y:
            raise PosetError(f"relation contains a cycle at {x}")
        lower[y - 1] |= 1 << (x - 1)
    return _from_relation(n, lower)


def induced_subposet(P: GradedPoset, mask: int) -> GradedPoset:
    """Subposet on the elements of ``mask`` with covers recomputed."""
    keep = list(bits(mask))
    if not keep:
        raise PosetError("empty subposet")
    pos = {old: new for new, old in enumerate(keep)}
    lower = []
    for old in keep:
        lower.append(sum(1 << pos[i] for i in bits(P.below[old] & mask)))
    return _from_relation(len(keep), lower)


def chain(n: int) -> GradedPoset:
    return build_poset(n, [(i, i + 1) for i in range(1, n)])


def antichain_poset(n: int) -> GradedPoset:
    return build_poset(n, [])


def disjoint_union(*posets: GradedPoset) -> GradedPoset:
    pairs = []
    offset = 0
    for P in posets:
        pairs.extend((x + offset, y + offset) for x, y in P.cover_pairs())
        offset += P.n
    return build_poset(offset, pairs)


# -- grading -----------------------------------------------------------------


def is_graded(P: GradedPoset) -> bool:
    """Every cover raises the rank by exactly one."""
    for y in range(P.n):
        for x in bits(P.covers[y]):
            if P.rank[y] != P.rank[x] + 1:
                return False
    return True


def rank_vector(P: GradedPoset) -> list[int]:
    counts = Counter(P.rank)
    return [counts[r] for r in range(1, max(P.rank) + 1)]


def minimals(P: GradedPoset) -> Antichain:
    return Antichain(sum(1 << i for i in range(P.n) if not P.below[i]))


def maximals(P: GradedPoset) -> Antichain:
    return Antichain(sum(1 << i for i in range(P.n) if not P.above[i]))


# -- antichains and ideals -----------------------------------------------------


def is_antichain(P: GradedPoset, mask: int) -> bool:
    return all(not P.below[i] & mask for i in bits(mask))


def is_ideal(P: GradedPoset, mask: int) -> bool:
    return all(P.below[i] & ~mask == 0 for i in bits(mask))


def _as_mask(x) -> int:
    return x if isinstance(x, int) else x.mask


def ideal_of(P: GradedPoset, A) -> OrderIdeal:
    a = _as_mask(A)
    if not is_antichain(P, a):
        raise PosetError(f"{elements_of(a)} is not an antichain")
    return OrderIdeal(kernels.ideal(P.below, a))


def crown(P: GradedPoset, I) -> Antichain:
    """The maximal elements of an order ideal."""
    m = _as_mask(I)
    if not is_ideal(P, m):
        raise PosetError(f"{elements_of(m)} is not an order ideal")
    return Antichain(sum(1 << i for i in bits(m) if not P.above[i] & m))


def antichain_masks(P: GradedPoset) -> list[int]:
    """All antichains of ``P`` as ascending masks (cached per poset)."""
    cache = P.__dict__.get("_antichains")
    if cache is None:
        cache = kernels.antichains(P.below, P.above)
        P.__dict__["_antichains"] = cache
    return cache


def enumerate_antichains(P: GradedPoset) -> Iterator[Antichain]:
    for a in antichain_masks(P):
        yield Antichain(a)


# -- parabolic structure -------------------------------------------------------


def support(P: GradedPoset, x: int) -> int:
    """Mask of the minimal elements below or equal to element ``x``."""
    i = x - 1
    return (P.below[i] | (1 << i)) & minimals(P).mask


def parabolic_subposet(P: GradedPoset, S) -> GradedPoset:
    """Subposet of elements whose support lies in the set ``S`` of minimals."""
    s = _as_mask(S) if not isinstance(S, (set, frozenset, list, tuple)) else mask_of(S)
    mins = minimals(P).mask
    if s & ~mins:
        raise PosetError(f"{elements_of(s & ~mins)} are not minimal elements")
    keep = 0
    for i in range(P.n):
        if (P.below[i] | (1 << i)) & mins & ~s == 0:
            keep |= 1 << i
    return induced_subposet(P, keep)


def delete_minimals(P: GradedPoset) -> GradedPoset:
    return induced_subposet(P, P.full & ~minimals(P).mask)


# -- text format -----------------------------------------------------------------


def dumps(P: GradedPoset) -> str:
    lines = [f"n {P.n}"]
    lines.extend(f"{x} {y}" for x, y in P.cover_pairs())
    return "\n".join(lines) + "\n"


def loads(text: str) -> GradedPoset:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows:
        raise PosetError("empty poset file")
    head = rows[0]
    if len(head) != 2 or head[0] != "n":
        raise PosetError(f"expected 'n <count>' header, got {' '.join(head)!r}")
    try:
        n = int(head[1])
        pairs = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise PosetError(f"malformed poset file: {exc}") from None
    return build_poset(n, pairs)


def read_poset(path) -> GradedPoset:
    return loads(Path(path).read_text())


def write_poset(P: GradedPoset, path) -> None:
    Path(path).write_text(dumps(P))
