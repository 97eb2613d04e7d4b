"""Per-type reference data (degrees, H-triangle, orbit sizes, q,t-Catalan)."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from . import rootdata
from .poset import GradedPoset


def rank_vector_from_degrees(degrees) -> list[int]:
    """Number of positive roots of each rank 1..h-1: ``#{j : d_j > i}``."""
    degrees = list(degrees)
    if not degrees:
        raise ValueError("empty degree list")
    h = max(degrees)
    return [sum(1 for d in degrees if d > i) for i in range(1, h)]


def catalan_number(degrees, h: int | None = None) -> int:
    """Product of (d_i + h) / d_i as an exact integer."""
    degrees = list(degrees)
    if h is None:
        h = max(degrees)
    value = Fraction(1)
    for d in degrees:
        value *= Fraction(d + h, d)
    if value.denominator != 1:
        raise ValueError(f"non-integral Catalan number {value} for degrees {degrees}")
    return value.numerator


@dataclass(frozen=True)
class RootSystemProfile:
    type_name: str
    n: int
    degrees: tuple[int, ...]
    h_triangle: tuple[tuple[int, ...], ...] | None = None
    orbit_multiset: tuple[int, ...] | None = None
    qt_catalan: tuple[tuple[int, int], ...] | None = None  # (shift, bracket length) summands
    coxeter_edges: tuple[tuple[int, int, int], ...] = ()
    cartan: tuple[tuple[int, ...], ...] | None = None
    derived: bool = False
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def h(self) -> int:
        return max(self.degrees)

    @property
    def expected_rank_vector(self) -> list[int]:
        return rank_vector_from_degrees(self.degrees)

    @property
    def positive_root_count(self) -> int:
        return sum(d - 1 for d in self.degrees)

    @property
    def catalan(self) -> int:
        return catalan_number(self.degrees, self.h)

    @property
    def homomesy_average(self) -> Fraction:
        return Fraction(self.n, 2)

    @property
    def restricted_average(self) -> Fraction:
        return Fraction(self.n * (self.h - 2), 2 * (self.h - 1))

    def ideal_genfun_target(self) -> list[int] | None:
        """Coefficients of the t=1 specialisation of the q,t-Catalan polynomial."""
        if self.qt_catalan is None:
            return None
        from .qt import HilbertCandidate

        return HilbertCandidate(self.qt_catalan).eval_t1().coeffs

    def parabolic_reference(self, simples: tuple[int, ...]) -> GradedPoset:
        """Reference root poset of the standard parabolic on 1-based simple indices."""
        key = tuple(sorted(simples))
        if key not in self._cache:
            if self.cartan is not None:
                sub = [[self.cartan[i - 1][j - 1] for j in key] for i in key]
                parts = _cartan_components(sub)
                self._cache[key] = rootdata.disjoint_union(*[rootdata.root_poset_from_cartan(c) for c in parts])
            else:
                self._cache[key] = rootdata.diagram_poset(list(key), list(self.coxeter_edges))
        return self._cache[key]

    def maximal_parabolics(self):
        """Pairs (dropped simple index, reference poset) for every rank n-1 parabolic."""
        full = tuple(range(1, self.n + 1))
        for kept in combinations(full, self.n - 1):
            (dropped,) = set(full) - set(kept)
            yield dropped, self.parabolic_reference(kept)


def _cartan_components(a: list[list[int]]) -> list[list[list[int]]]:
    n = len(a)
    seen: set[int] = set()
    out = []
    for s in range(n):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        for v in comp:
            for w in range(n):
                if w not in seen and a[v][w] != 0:
                    seen.add(w)
                    comp.append(w)
        comp.sort()
        out.append([[a[i][j] for j in comp] for i in comp])
    return out


_DIHEDRAL = re.compile(r"I2\((\d+)\)$")

# Standard degrees of the crystallographic oracle types.
CRYSTALLOGRAPHIC_DEGREES = {
    "A1": (2,),
    "A2": (3, 2),
    "A3": (4, 3, 2),
    "A4": (5, 4, 3, 2),
    "B2": (4, 2),
    "B3": (6, 4, 2),
    "B4": (8, 6, 4, 2),
    "C3": (6, 4, 2),
    "C4": (8, 6, 4, 2),
    "D4": (6, 4, 4, 2),
    "F4": (12, 8, 6, 2),
    "G2": (6, 2),
}


def dihedral_profile(m: int) -> RootSystemProfile:
    return RootSystemProfile(
        type_name=f"I2({m})",
        n=2,
        degrees=(m, 2),
        h_triangle=((1, m - 2, 0), (0, 2, 0), (0, 0, 1)),
        orbit_multiset=tuple(sorted((2, m))),
        qt_catalan=((0, m + 1), (1, 1)),
        coxeter_edges=((1, 2, m),),
    )


def crystallographic_profile(name: str) -> RootSystemProfile:
    """Profile whose H-triangle and orbit sizes are computed from the root poset."""
    from . import invariants

    family, n = name[0], int(name[1:])
    cartan = rootdata.cartan_matrix(family, n)
    P = rootdata.root_poset_from_cartan(cartan)
    return RootSystemProfile(
        type_name=name,
        n=n,
        degrees=CRYSTALLOGRAPHIC_DEGREES[name],
        h_triangle=tuple(tuple(row) for row in invariants.h_triangle(P)),
        orbit_multiset=tuple(sorted(length for length, _ in invariants.panyushev_orbits(P))),
        cartan=tuple(tuple(r) for r in cartan),
        derived=True,
    )


@lru_cache(maxsize=None)
def bundled_profiles() -> dict[str, RootSystemProfile]:
    out = {}
    for name, rec in rootdata.load_json("profiles.json").items():
        out[name] = RootSystemProfile(
            type_name=name,
            n=rec["n"],
            degrees=tuple(rec["degrees"]),
            h_triangle=tuple(tuple(r) for r in rec["h_triangle"]),
            orbit_multiset=tuple(sorted(rec["orbits"])),
            qt_catalan=tuple(tuple(s) for s in rec["qt_catalan"]),
            coxeter_edges=tuple(tuple(e) for e in rec["coxeter_edges"]),
        )
    return out


@lru_cache(maxsize=None)
def get_profile(name: str) -> RootSystemProfile:
    """Look up a profile: ``H3``, ``H4``, ``I2(m)`` or a crystallographic type like ``B4``."""
    m = _DIHEDRAL.match(name)
    if m:
        return dihedral_profile(int(m.group(1)))
    bundled = bundled_profiles()
    if name in bundled:
        return bundled[name]
    if name in CRYSTALLOGRAPHIC_DEGREES:
        return crystallographic_profile(name)
    raise KeyError(f"unknown profile {name!r}")
