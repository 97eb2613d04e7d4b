"""Property checks on candidate root posets.

Selection tokens: ``1`` (minimals, unique maximum, grading, parabolics), ``2``
(rank vector from degrees), ``3`` (antichain count), ``4`` (H-triangle),
``5a`` (orbit homomesy), ``5b`` (restricted homomesy), ``5-multiset`` (orbit
sizes) and ``6`` (ideal-size generating function).
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from . import kernels
from .canon import canonical_form
from .poset import (
    GradedPoset,
    antichain_masks,
    bits,
    delete_minimals,
    is_graded,
    maximals,
    minimals,
    parabolic_subposet,
    rank_vector,
)
from .profiles import RootSystemProfile, catalan_number, rank_vector_from_degrees
from .qt import QPoly

__all__ = [
    "ALL_PROPERTIES",
    "PropertyReport",
    "PropertyResult",
    "catalan_number",
    "check_properties",
    "h_triangle",
    "ideal_size_genfun",
    "panyushev_orbits",
    "panyushev_step",
    "parse_properties",
    "rank_vector_from_degrees",
    "restricted_panyushev_orbits",
]

ALL_PROPERTIES = ("1", "2", "3", "4", "5-multiset", "5a", "5b", "6")
_ALIASES = {"5": ("5-multiset", "5a", "5b"), "5m": ("5-multiset",), "5multiset": ("5-multiset",)}


def parse_properties(text: str) -> tuple[str, ...]:
    """Parse selections such as ``"1-4,5a"`` or ``"1-6"`` into canonical tokens."""
    wanted: set[str] = set()
    for raw in text.replace(" ", "").split(","):
        if not raw:
            continue
        if "-" in raw and raw != "5-multiset":
            lo, hi = raw.split("-", 1)
            for k in range(int(lo), int(hi) + 1):
                wanted.update(_ALIASES.get(str(k), (str(k),)))
        else:
            wanted.update(_ALIASES.get(raw, (raw,)))
    unknown = wanted - set(ALL_PROPERTIES)
    if unknown:
        raise ValueError(f"unknown properties {sorted(unknown)}")
    return tuple(p for p in ALL_PROPERTIES if p in wanted)


def h_triangle(P: GradedPoset, simples: int | None = None) -> list[list[int]]:
    """n_{k,m}: antichains of size m containing k of the ``simples`` (default: minimals)."""
    if simples is None:
        simples = minimals(P).mask
    k_max = simples.bit_count()
    tri = [[0] * (k_max + 1) for _ in range(k_max + 1)]
    for a in antichain_masks(P):
        k, m = (a & simples).bit_count(), a.bit_count()
        if m > k_max:
            # wider than the simple system: keep the count visible
            for row in tri:
                row.extend([0] * (m + 1 - len(row)))
        tri[k][m] += 1
    width = max(len(r) for r in tri)
    return [r + [0] * (width - len(r)) for r in tri]


def panyushev_step(P: GradedPoset, A) -> int:
    a = A if isinstance(A, int) else A.mask
    return kernels.panyushev(P.below, a)


def panyushev_orbits(P: GradedPoset) -> list[tuple[int, Fraction]]:
    """(length, average antichain size) for every Panyushev orbit."""
    out = []
    for length, total, _ in kernels.orbits(P.below, antichain_masks(P)):
        out.append((length, Fraction(total, length)))
    return out


def restricted_panyushev_orbits(P: GradedPoset) -> list[tuple[int, Fraction]]:
    return panyushev_orbits(delete_minimals(P))


def ideal_size_genfun(P: GradedPoset) -> QPoly:
    hist = [0] * (P.n + 1)
    for a in antichain_masks(P):
        hist[kernels.ideal(P.below, a).bit_count()] += 1
    return QPoly(hist)


# -- report ----------------------------------------------------------------------


@dataclass
class PropertyResult:
    name: str
    passed: bool
    witness: dict = field(default_factory=dict)


@dataclass
class PropertyReport:
    profile: str
    results: list[PropertyResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, name: str) -> PropertyResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def failed(self) -> list[str]:
        return [r.name for r in self.results if not r.passed]

    def to_text(self) -> str:
        lines = [f"profile {self.profile}"]
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            detail = "" if r.passed else "  " + json.dumps(r.witness, default=str)
            lines.append(f"  property {r.name:<10} {status}{detail}")
        lines.append("  overall " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines)

    def to_records(self) -> list[dict]:
        return [
            {"profile": self.profile, "property": r.name, "passed": r.passed, "witness": r.witness}
            for r in self.results
        ]


class MissingProfileData(ValueError):
    pass


def _parabolic_match(P: GradedPoset, profile: RootSystemProfile) -> tuple[bool, dict]:
    mins = list(bits(minimals(P).mask))
    if len(mins) != profile.n:
        return False, {"reason": "wrong number of minimal elements"}
    # canonical form of the subposet obtained by dropping each minimal element
    dropped_forms = {
        x: canonical_form(parabolic_subposet(P, minimals(P).mask & ~(1 << x))) for x in mins
    }
    refs = {i: canonical_form(ref) for i, ref in profile.maximal_parabolics()}
    for perm in permutations(mins):
        # perm[i-1] is the minimal element playing simple root i
        if all(dropped_forms[perm[i - 1]] == refs[i] for i in refs):
            return True, {"simple_roots": [x + 1 for x in perm]}
    return False, {"reason": "no labelling of the minimal elements matches every maximal parabolic"}


def check_properties(
    P: GradedPoset,
    profile: RootSystemProfile,
    selection=ALL_PROPERTIES,
    parabolic: bool = True,
) -> PropertyReport:
    """Run the selected property checks; each result carries a witness statistic."""
    if isinstance(selection, str):
        selection = parse_properties(selection)
    results = []
    for prop in ALL_PROPERTIES:
        if prop not in selection:
            continue
        if prop == "1":
            mins = minimals(P)
            maxs = maximals(P)
            witness = {
                "minimals": list(mins.members),
                "maximals": list(maxs.members),
                "graded": is_graded(P),
            }
            ok = len(mins) == profile.n and len(maxs) == 1 and witness["graded"]
            if ok and parabolic and profile.n > 1:
                ok, extra = _parabolic_match(P, profile)
                witness["parabolics"] = extra
            results.append(PropertyResult("1", ok, witness))
        elif prop == "2":
            got = rank_vector(P)
            want = profile.expected_rank_vector
            ok = is_graded(P) and got == want
            results.append(PropertyResult("2", ok, {"rank_vector": got, "expected": want}))
        elif prop == "3":
            got = len(antichain_masks(P))
            results.append(PropertyResult("3", got == profile.catalan, {"antichains": got, "expected": profile.catalan}))
        elif prop == "4":
            if profile.h_triangle is None:
                raise MissingProfileData(f"{profile.type_name} has no H-triangle")
            got = h_triangle(P)
            want = [list(r) for r in profile.h_triangle]
            results.append(PropertyResult("4", got == want, {"h_triangle": got, "expected": want}))
        elif prop == "5-multiset":
            if profile.orbit_multiset is None:
                raise MissingProfileData(f"{profile.type_name} has no orbit multiset")
            got = sorted(length for length, _ in panyushev_orbits(P))
            want = list(profile.orbit_multiset)
            results.append(PropertyResult("5-multiset", got == want, {"orbit_sizes": got, "expected": want}))
        elif prop == "5a":
            target = profile.homomesy_average
            bad = sorted({(length, str(avg)) for length, avg in panyushev_orbits(P) if avg != target})
            results.append(PropertyResult("5a", not bad, {"expected_average": str(target), "offending": bad}))
        elif prop == "5b":
            target = profile.restricted_average
            orbits = restricted_panyushev_orbits(P)
            bad = sorted({(length, str(avg)) for length, avg in orbits if avg != target})
            results.append(PropertyResult("5b", not bad, {"expected_average": str(target), "offending": bad}))
        elif prop == "6":
            want = profile.ideal_genfun_target()
            if want is None:
                raise MissingProfileData(f"{profile.type_name} has no q,t-Catalan polynomial")
            got = ideal_size_genfun(P).coeffs
            diff = {s: (a, b) for s, (a, b) in enumerate(_zip_pad(got, want)) if a != b}
            results.append(PropertyResult("6", not diff, {"ideal_sizes": got, "differences": diff}))
    return PropertyReport(profile.type_name, results)


def _zip_pad(a, b):
    width = max(len(a), len(b))
    return zip(list(a) + [0] * (width - len(a)), list(b) + [0] * (width - len(b)))


def orbit_summary(P: GradedPoset) -> dict:
    orbits = panyushev_orbits(P)
    return {
        "sizes": dict(sorted(Counter(length for length, _ in orbits).items())),
        "averages": sorted({str(avg) for _, avg in orbits}),
    }
