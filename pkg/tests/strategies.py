"""Hypothesis strategies for small graded posets."""

from hypothesis import strategies as st

from rootposet.poset import build_poset


@st.composite
def ranked_posets(draw, max_ranks: int = 5, max_width: int = 4):
    """Random posets built rank by rank; every non-minimal element covers something."""
    sizes = draw(st.lists(st.integers(1, max_width), min_size=1, max_size=max_ranks))
    starts = [0]
    for s in sizes:
        starts.append(starts[-1] + s)
    pairs = []
    for r in range(1, len(sizes)):
        lower = list(range(starts[r - 1] + 1, starts[r] + 1))
        for y in range(starts[r] + 1, starts[r + 1] + 1):
            chosen = draw(st.lists(st.sampled_from(lower), min_size=1, max_size=len(lower), unique=True))
            pairs.extend((x, y) for x in chosen)
    return build_poset(starts[-1], pairs)


@st.composite
def relations(draw, max_n: int = 9):
    """Arbitrary acyclic relations (pairs go from smaller to larger labels, then get shuffled)."""
    n = draw(st.integers(1, max_n))
    pairs = draw(st.lists(st.tuples(st.integers(1, n), st.integers(1, n)).filter(lambda p: p[0] < p[1]), max_size=3 * n))
    perm = draw(st.permutations(range(1, n + 1)))
    return n, [(perm[x - 1], perm[y - 1]) for x, y in pairs]
