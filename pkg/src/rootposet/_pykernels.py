"""Pure-Python versions of the bitmask kernels.

Every function here has a twin in ``_kernels.pyx`` with the same signature and
the same results; ``rootposet.kernels`` picks one at import time.

Posets are passed as two lists of ints, ``below[i]`` and ``above[i]``: the
strict down-set and up-set of element ``i`` as bit masks.
"""

from __future__ import annotations

from functools import reduce
from math import comb
from operator import or_

IMPLEMENTATION = "python"


def _comparability(below, above):
    return [below[i] | above[i] | (1 << i) for i in range(len(below))]


def antichains(below, above, cap=-1):
    """All antichain masks in ascending order, or None once more than ``cap`` exist."""
    n = len(below)
    comp = _comparability(below, above)
    full = (1 << n) - 1
    out = [0]
    stack = [(0, full)]
    while stack:
        a, avail = stack.pop()
        while avail:
            low = avail & -avail
            i = low.bit_length() - 1
            avail ^= low
            b = a | low
            out.append(b)
            if 0 <= cap < len(out):
                return None
            rest = avail & ~comp[i]
            if rest:
                stack.append((b, rest))
    out.sort()
    return out


def ideal(below, a):
    acc = a
    while a:
        low = a & -a
        acc |= below[low.bit_length() - 1]
        a ^= low
    return acc


def census(below, above, simples, cap=-1):
    """Antichains plus their size statistics.

    Returns ``(antichains, htri, ideal_hist)`` where ``htri[k][m]`` counts
    antichains of size ``m`` meeting ``simples`` in ``k`` elements and
    ``ideal_hist[s]`` counts order ideals of size ``s``.  None if the antichain
    count exceeds ``cap``.
    """
    acs = antichains(below, above, cap)
    if acs is None:
        return None
    n = len(below)
    k_max = simples.bit_count()
    htri = [[0] * (n + 1) for _ in range(k_max + 1)]
    hist = [0] * (n + 1)
    for a in acs:
        htri[(a & simples).bit_count()][a.bit_count()] += 1
        hist[ideal(below, a).bit_count()] += 1
    return acs, htri, hist


def panyushev(below, a):
    n = len(below)
    comp = ((1 << n) - 1) & ~ideal(below, a)
    out = 0
    rest = comp
    while rest:
        low = rest & -rest
        rest ^= low
        if not below[low.bit_length() - 1] & comp:
            out |= low
    return out


def orbits(below, acs, uncertified=0):
    """Panyushev orbits of the sorted antichain list ``acs``.

    Yields one ``(length, total_size, certified)`` triple per orbit, in order of
    each orbit's smallest antichain.  An orbit is certified when none of its
    antichains meets the ``uncertified`` mask.
    """
    index = {a: j for j, a in enumerate(acs)}
    seen = bytearray(len(acs))
    out = []
    for j, start in enumerate(acs):
        if seen[j]:
            continue
        length = 0
        total = 0
        certified = True
        a = start
        while True:
            seen[index[a]] = 1
            length += 1
            total += a.bit_count()
            if a & uncertified:
                certified = False
            a = panyushev(below, a)
            if a == start:
                break
        out.append((length, total, certified))
    return out


PRUNE_REASONS = (
    "antichain count",
    "h-triangle",
    "ideal sizes",
    "orbit average",
    "orbit length",
    "restricted orbit average",
)


def v2_dfs(
    sizes,
    patterns,
    seed_covers,
    seed_below,
    prefix=(),
    check_root=True,
    stop_depth=-1,
    cap=-1,
    tri_target=None,
    ideal_targets=None,
    orbit_allowed=None,
    avg_a=None,
    avg_b=None,
):
    """Depth-first rank-by-rank search.

    ``patterns[r]`` lists the cover patterns between rank ``r+1`` and ``r+2``
    (tuples of lower-rank masks, one per upper vertex).  The seed occupies the
    first ranks.  Starting from the node reached by ``prefix`` the tree is
    walked, applying the enabled checks at every node.  Returns
    ``(items, stats)``: full cover lists of the surviving leaves, or the
    surviving choice prefixes of length ``stop_depth`` when that is >= 0.
    """
    nr = len(sizes)
    starts = [0]
    for s in sizes:
        starts.append(starts[-1] + s)
    total = starts[-1]
    n = sizes[0]
    simples = (1 << n) - 1
    covers = list(seed_covers) + [0] * (total - len(seed_covers))
    below = list(seed_below) + [0] * (total - len(seed_below))
    above = [0] * total
    for y in range(len(seed_below)):
        m = seed_below[y]
        while m:
            low = m & -m
            above[low.bit_length() - 1] |= 1 << y
            m ^= low
    depth0 = starts.index(len(seed_covers))
    # antichains inside each rank still to come: always present, never simple
    # antichains inside each rank still to come: always present, never simple
    future = [[0] + [sum(comb(size, m) for size in sizes[d:]) for m in range(1, total + 1)] for d in range(nr + 1)]
    # while every level covers its whole lower rank, each later rank has an
    # element above a simple that the top rank reaches, so at most size - 1 miss it
    spare = []
    for d in range(nr + 1):
        held, miss = d > 0, 0
        for r in range(d, nr):
            full = (1 << sizes[r - 1]) - 1
            held = held and all(reduce(or_, pat, 0) == full for pat in patterns[r - 1])
            miss += sizes[r] - held
        spare.append(miss)
    stats = dict.fromkeys(("nodes", "leaves") + PRUNE_REASONS, 0)
    out = []
    choices = []

    def apply(depth, idx):
        lo = starts[depth - 1]
        st = starts[depth]
        for u, m in enumerate(patterns[depth - 1][idx]):
            c = m << lo
            bb = c
            rest = c
            while rest:
                low = rest & -rest
                bb |= below[low.bit_length() - 1]
                rest ^= low
            covers[st + u] = c
            below[st + u] = bb
            above[st + u] = 0
            new = 1 << (st + u)
            rest = bb
            while rest:
                low = rest & -rest
                above[low.bit_length() - 1] |= new
                rest ^= low

    def orbit_scan(bl, acs, top, num, den, allowed):
        seen_len = {}
        for length, tot, certified in orbits(bl, acs, top):
            if not certified:
                continue
            if num is not None and tot * den != length * num:
                return "orbit average"
            if allowed is not None:
                seen_len[length] = seen_len.get(length, 0) + 1
                if length >= len(allowed) or seen_len[length] > allowed[length]:
                    return "orbit length"
        return None

    def check(depth):
        size = starts[depth]
        bl = below[:size]
        res = census(bl, above[:size], simples, cap)
        if res is None:
            return "antichain count"
        acs, htri, hist = res
        if tri_target is not None:
            reach, touch = simples, 0
            for x in range(starts[depth - 1], size):
                reach &= below[x]
                touch |= below[x]
            # simples some top element misses; only these can pair with later elements
            loose = (simples & ~reach).bit_count()
            bounded = touch & simples == simples
            fixed = not loose
            for k, row in enumerate(htri):
                want = tri_target[k]
                for m in range(size + 1):
                    if row[m] + (0 if k else future[depth][m]) > want[m] or (fixed and k and row[m] != want[m]):
                        return "h-triangle"
                if bounded and k and k < size and row[k + 1] + comb(loose, k) * spare[depth] < want[k + 1]:
                    return "h-triangle"
        if ideal_targets is not None:
            # every later element covers one on the top rank, so ideals no
            # larger than the smallest principal ideal there are final
            p = total
            if depth < nr:
                p = min(below[x].bit_count() + 1 for x in range(starts[depth - 1], size))
            if not any(
                all(hist[s] == t[s] for s in range(p + 1)) and all(hist[s] <= t[s] for s in range(size + 1))
                for t in ideal_targets
            ):
                return "ideal sizes"
        top = 0 if depth == nr else ((1 << size) - 1) ^ ((1 << starts[depth - 1]) - 1)
        if orbit_allowed is not None or avg_a is not None:
            num, den = avg_a if avg_a is not None else (None, None)
            bad = orbit_scan(bl, acs, top, num, den, orbit_allowed)
            if bad:
                return bad
        if avg_b is not None and depth > 1:
            b2 = [b >> n for b in below[n:size]]
            u2 = [a >> n for a in above[n:size]]
            if orbit_scan(b2, antichains(b2, u2), top >> n, avg_b[0], avg_b[1], None):
                return "restricted orbit average"
        return None

    def walk(depth, check_node):
        if check_node:
            stats["nodes"] += 1
            bad = check(depth)
            if bad:
                stats[bad] += 1
                return
        if stop_depth >= 0 and (len(choices) == stop_depth or depth == nr):
            out.append(tuple(choices))
            return
        if depth == nr:
            stats["leaves"] += 1
            out.append(covers[:total])
            return
        saved = above[:]
        for idx in range(len(patterns[depth - 1])):
            apply(depth, idx)
            choices.append(idx)
            walk(depth + 1, True)
            choices.pop()
            above[:] = saved

    depth = depth0
    for idx in prefix:
        apply(depth, idx)
        choices.append(idx)
        depth += 1
    walk(depth, check_root)
    return out, stats
