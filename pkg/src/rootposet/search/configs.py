"""Cover patterns between two consecutive ranks."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement


@dataclass(frozen=True, order=True)
class RankConfiguration:
    """``pattern[u]`` is the mask of lower vertices covered by upper vertex ``u``.

    Patterns are sorted, so configurations differing by a permutation of the
    upper vertices coincide.
    """

    lower_size: int
    upper_size: int
    pattern: tuple[int, ...]

    def covers(self) -> list[tuple[int, int]]:
        """0-based (lower, upper) cover pairs."""
        return [(l, u) for u, m in enumerate(self.pattern) for l in range(self.lower_size) if m >> l & 1]


def has_wide_antichain(lower_size: int, pattern, width: int, exempt_lower: bool = False) -> bool:
    """Whether the two ranks contain an antichain with ``width`` elements.

    With ``exempt_lower`` the full lower rank is allowed as such an antichain.
    """
    upper_size = len(pattern)
    for k in range(max(0, width - upper_size), min(width, lower_size) + 1):
        for lows in combinations(range(lower_size), k):
            low_mask = sum(1 << l for l in lows)
            free = [u for u in range(upper_size) if not pattern[u] & low_mask]
            if len(free) >= width - k:
                if exempt_lower and k == lower_size and k == width:
                    continue
                return True
    return False


@lru_cache(maxsize=None)
def rank_configurations(
    lower_size: int,
    upper_size: int,
    forbid: int | None = 4,
    exempt_lower: bool = False,
    require_lower_covered: bool = True,
) -> tuple[RankConfiguration, ...]:
    """All cover patterns with every upper vertex covering something.

    By default every lower vertex must be covered too, and no antichain of
    size ``forbid`` may lie inside the two ranks (``None`` disables this).
    ``exempt_lower`` tolerates the full lower rank as such an antichain,
    which is how the set of simple roots is treated.
    """
    if lower_size < 1 or upper_size < 1:
        raise ValueError("rank sizes must be positive")
    full = (1 << lower_size) - 1
    out = []
    for pattern in combinations_with_replacement(range(1, full + 1), upper_size):
        if require_lower_covered:
            seen = 0
            for m in pattern:
                seen |= m
            if seen != full:
                continue
        if forbid is not None and has_wide_antichain(lower_size, pattern, forbid, exempt_lower):
            continue
        out.append(RankConfiguration(lower_size, upper_size, pattern))
    return tuple(out)
