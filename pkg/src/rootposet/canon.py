"""Canonical labelling of finite posets.

Colour refinement on the Hasse diagram (seeded with rank and up/down-set
sizes) followed by individualisation of one vertex at a time.  Vertices with
identical lower and upper cover sets are interchangeable, so only one of them
is branched on.
"""

from __future__ import annotations

from .poset import GradedPoset, bits, build_poset

CanonicalForm = tuple[int, tuple[tuple[int, int], ...]]


def _refine(colors: list[int], lowers: list[list[int]], uppers: list[list[int]]) -> list[int]:
    n = len(colors)
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[u] for u in lowers[v])), tuple(sorted(colors[u] for u in uppers[v])))
            for v in range(n)
        ]
        table = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [table[s] for s in sigs]
        if len(table) == len(set(colors)):
            return new
        colors = new


def _encode(order: list[int], lowers: list[list[int]]) -> tuple[tuple[int, int], ...]:
    pos = {v: i + 1 for i, v in enumerate(order)}
    return tuple(sorted((pos[u], pos[v]) for v in order for u in lowers[v]))


def canonical_labelling(P: GradedPoset) -> list[int]:
    """A list ``order`` such that ``order[i]`` is the element placed at position ``i``."""
    n = P.n
    lowers = [list(bits(P.covers[v])) for v in range(n)]
    uppers: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        for u in lowers[v]:
            uppers[u].append(v)
    seed = [
        (P.rank[v], P.below[v].bit_count(), P.above[v].bit_count(), len(lowers[v]), len(uppers[v]))
        for v in range(n)
    ]
    table = {s: i for i, s in enumerate(sorted(set(seed)))}
    colors = _refine([table[s] for s in seed], lowers, uppers)
    twin_key = [(P.covers[v], tuple(uppers[v])) for v in range(n)]

    best: tuple | None = None
    best_order: list[int] = []

    def search(colors: list[int]) -> None:
        nonlocal best, best_order
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = next((c for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            order = sorted(range(n), key=colors.__getitem__)
            code = _encode(order, lowers)
            if best is None or code < best:
                best, best_order = code, order
            return
        tried = set()
        for v in cells[target]:
            if twin_key[v] in tried:
                continue
            tried.add(twin_key[v])
            # individualise v: it sorts before the rest of its cell
            split = [2 * c + (0 if (c != target or u == v) else 1) for u, c in enumerate(colors)]
            search(_refine(split, lowers, uppers))

    search(colors)
    return best_order


def canonical_form(P: GradedPoset) -> CanonicalForm:
    cached = P.__dict__.get("_canonical")
    if cached is None:
        order = canonical_labelling(P)
        lowers = [list(bits(P.covers[v])) for v in range(P.n)]
        cached = (P.n, _encode(order, lowers))
        P.__dict__["_canonical"] = cached
    return cached


def canonical_poset(P: GradedPoset) -> GradedPoset:
    n, pairs = canonical_form(P)
    return build_poset(n, pairs)


def is_isomorphic(P: GradedPoset, Q: GradedPoset) -> bool:
    if P.n != Q.n or sorted(P.rank) != sorted(Q.rank):
        return False
    if len(P.cover_pairs()) != len(Q.cover_pairs()):
        return False
    return canonical_form(P) == canonical_form(Q)
