"""One test per acceptance criterion; each prints a PASS/FAIL line.

The long H4 search of criterion 7 only runs with ``--runslow``.  A summary of
all verdicts is printed at the end of the pytest run.
"""

import os
import sys
import time
from collections import Counter
from itertools import combinations

import pytest

from rootposet.canon import canonical_form, is_isomorphic
from rootposet.cli import main as cli_main
from rootposet.h3_from_d6 import FIG3_ROWS, build_h3_poset, tau_pairs
from rootposet.invariants import (
    check_properties,
    h_triangle,
    ideal_size_genfun,
    panyushev_orbits,
    panyushev_step,
)
from rootposet.poset import antichain_masks, bits, crown, ideal_of
from rootposet.profiles import get_profile
from rootposet.qt import (
    HilbertCandidate,
    conjecture_h4_polynomial,
    decompose_q2_brackets,
    enumerate_hilbert_candidates,
    eval_t_qinv_shift,
    h4_product_formula,
)
from rootposet.rootdata import crystallographic_root_poset, dihedral_poset, h3_fixture, h4_fixtures
from rootposet.search import SearchSpec, run_search, search_v1, search_v2
from rootposet.search.configs import rank_configurations
from rootposet.search.v2 import V2Search

H3_TRIANGLE = [[1, 12, 8, 0], [0, 3, 4, 0], [0, 0, 3, 0], [0, 0, 0, 1]]
H3_HILBERT = HilbertCandidate(((0, 16), (1, 10), (1, 6)))
BRACKETS = [61, 49, 41, 37, 31, 25, 21, 13, 1, 1]
# multiplicity per realised candidate: shifts of [49], [41], [37], [31], [25], [21], [13]
RELAXED = {
    (1, 3, 1, 4, 2, 1, 2): 2,
    (1, 1, 3, 1, 4, 2, 2): 10,
    (1, 1, 4, 1, 3, 2, 2): 12,
    (1, 1, 4, 1, 2, 2, 3): 16,
    (1, 3, 1, 1, 4, 2, 2): 20,
    (1, 1, 3, 1, 2, 2, 4): 20,
    (1, 3, 1, 1, 2, 2, 4): 40,
}


def _orbit_lengths(P):
    return sorted(length for length, _ in panyushev_orbits(P))


def _timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def test_criterion_01_dihedral_uniqueness(verdict):
    bad = []
    worst = 0.0
    for m in (5, 7, 8, 9, 10, 11, 12):
        found, dt = _timed(lambda: search_v2(f"I2({m})", "1-2"))
        worst = max(worst, dt)
        P = found[0] if len(found) == 1 else None
        ok = (
            P is not None
            and is_isomorphic(P, dihedral_poset(m))
            and check_properties(P, get_profile(f"I2({m})"), "3-6").passed
            and len(antichain_masks(P)) == m + 2
            and _orbit_lengths(P) == sorted([2, m])
            and dt < 1.0
        )
        if not ok:
            bad.append(m)
    verdict(1, not bad, f"I2(m) unique for m in 5,7..12; slowest {worst:.3f}s; failures {bad}")


def test_criterion_02_h3_uniqueness(verdict):
    found, dt = _timed(lambda: search_v2("H3", "1-5"))
    P = found[0] if found else None
    ok = (
        len(found) == 1
        and is_isomorphic(P, h3_fixture())
        and h_triangle(P) == H3_TRIANGLE
        and _orbit_lengths(P) == [2, 10, 10, 10]
        and ideal_size_genfun(P) == H3_HILBERT.eval_t1()
        and dt < 60
    )
    verdict(2, ok, f"{len(found)} poset(s) in {dt:.2f}s")


def test_criterion_03_d6_construction(verdict):
    (P, pairs), dt = _timed(lambda: (build_h3_poset(), tau_pairs()))
    rows = [(a.v_coords, b.v_coords) for a, b in pairs]
    ok = is_isomorphic(P, h3_fixture()) and rows == list(FIG3_ROWS) and dt < 1.0
    verdict(3, ok, f"isomorphic, {len(rows)} rows match, {dt:.3f}s")


def test_criterion_04_crystallographic(verdict):
    start = time.perf_counter()
    checks = {}
    for name in ("A3", "B4", "F4"):
        P = crystallographic_root_poset(name)
        checks[name] = check_properties(P, get_profile(name), "1-4,5a").passed
    for name in ("B4", "F4"):
        found = search_v2(name, "1-5")
        checks[f"search {name}"] = len(found) == 1 and is_isomorphic(found[0], crystallographic_root_poset(name))
    dt = time.perf_counter() - start
    verdict(4, all(checks.values()) and dt < 600, f"{checks}, {dt:.1f}s")


def test_criterion_05_configuration_counts(verdict):
    want = {(3, 3): 51, (3, 2): 13, (2, 2): 4, (1, 1): 1}
    got, dt = _timed(lambda: {k: len(rank_configurations(*k)) for k in want})
    diff = {k: (got[k], want[k]) for k in want if got[k] != want[k]}
    verdict(5, not diff and dt < 1.0, f"counts {got}, diff {diff}, {dt:.2f}s")


def test_criterion_06_h4_fixtures(verdict):
    start = time.perf_counter()
    profile = get_profile("H4")
    results = []
    for P in h4_fixtures():
        good = check_properties(P, profile, "1-4,5a").passed
        report = check_properties(P, profile, "5-multiset,5b")
        results.append(good and not report["5b"].passed and not report["5-multiset"].passed)
    dt = time.perf_counter() - start
    verdict(6, all(results) and dt < 30, f"per fixture {results}, {dt:.1f}s")


@pytest.mark.slow
def test_criterion_07_h4_homomesy_search(verdict):
    spec = SearchSpec.make("H4", "1-4,5a", symmetry_depth=4)
    result = run_search(spec, 0, workers=os.cpu_count() or 1)
    fixtures = h4_fixtures()
    matched = sorted(canonical_form(P) for P in result.posets) == sorted(canonical_form(F) for F in fixtures)
    verdict(7, matched, f"{len(result.posets)} posets in {result.wall_time / 3600:.2f}h, fixtures matched: {matched}")


def test_criterion_08_h4_property_6(verdict):
    found, dt = _timed(lambda: search_v2("H4", "1-4,6", symmetry_depth=2))
    verdict(8, not found and dt < 60, f"{len(found)} posets in {dt:.1f}s")


def test_criterion_09_relaxed_analysis(verdict):
    cands, dt_c = _timed(enumerate_hilbert_candidates)
    distinct = len({tuple(c.eval_t1().coeffs) for c in cands})
    targets = [c.eval_t1().coeffs for c in cands]
    found, dt_p = _timed(lambda: search_v2("H4", "1-4,6", ideal_targets=targets, symmetry_depth=2))
    by_coeffs = Counter(tuple(ideal_size_genfun(P).coeffs) for P in found)
    realised = {}
    for c in cands:
        k = by_coeffs.get(tuple(c.eval_t1().coeffs))
        if k:
            realised[tuple(shift for shift, _ in c.summands[1:8])] = k
    ok = len(cands) == 180 and distinct == 180 and dt_c < 1.0 and len(found) == 120 and realised == RELAXED
    verdict(
        9,
        ok,
        f"{len(cands)} candidates ({distinct} distinct, {dt_c:.2f}s); "
        f"{len(found)} posets over {len(realised)} candidates {sorted(realised.values())} in {dt_p:.1f}s",
    )


def test_criterion_10_qt_identities(verdict):
    start = time.perf_counter()
    U = h4_product_formula()
    parts = decompose_q2_brackets(U)
    ok = (
        U(1) == 280
        and eval_t_qinv_shift(conjecture_h4_polynomial().expand(), 60) == U
        and [b for _, b in parts] == BRACKETS
    )
    dt = time.perf_counter() - start
    verdict(10, ok and dt < 1.0, f"bracket lengths {[b for _, b in parts]}, {dt:.2f}s")


def _bundled_posets():
    out = {f"I2({m})": dihedral_poset(m) for m in range(3, 13)}
    out["H3"] = h3_fixture()
    for name in ("A3", "B4", "F4"):
        out[name] = crystallographic_root_poset(name)
    for i, P in enumerate(h4_fixtures(), 1):
        out[f"H4 fig6 {i}"] = P
    return out


def test_criterion_11_soundness(verdict):
    checks = {}
    forms = lambda ps: sorted(canonical_form(P) for P in ps)  # noqa: E731
    sound = True
    for profile in ("I2(5)", "I2(7)", "I2(12)", "H3"):
        for props in ("1-4", "1-5", "1-6"):
            sound &= forms(search_v2(profile, props)) == forms(search_v2(profile, props, prune=False))
    checks["pruned == unpruned"] = sound

    brute = True
    round_trip = True
    for name, P in _bundled_posets().items():
        acs = antichain_masks(P)
        if P.n <= 20:
            want = [m for m in range(1 << P.n) if all(not P.below[i] & m for i in bits(m))]
            brute &= acs == want
        images = sorted(panyushev_step(P, a) for a in acs)
        round_trip &= images == acs
        round_trip &= all(crown(P, ideal_of(P, a)).mask == a for a in acs)
    checks["antichains == brute force"] = brute
    checks["bijection and round trip"] = round_trip

    spec = SearchSpec.make("H3", "1-3")
    texts = [[canonical_form(P) for P in run_search(spec, 2, workers=w).posets] for w in (1, 4)]
    checks["workers 1 == 4"] = texts[0] == texts[1]
    verdict(11, all(checks.values()), str(checks))


def test_criterion_12_out_of_reach(verdict, capsys):
    # the full 1-4 count is not attempted; check that it is refused unless asked for
    refused = []
    try:
        search_v1("1-4")
    except ValueError:
        refused.append("search_v1")
    if cli_main(["search", "--profile", "H4", "--properties", "1-4"]) == 2:
        refused.append("cli v2")
    if cli_main(["search", "--profile", "H4", "--algorithm", "v1"]) == 2:
        refused.append("cli v1")
    capsys.readouterr()
    verdict(12, len(refused) == 3, f"not reproduced by design; unbounded runs gated in {refused}")


def test_fixture_unit_of_the_homomesy_search():
    # fast stand-in for criterion 7: the subtree holding the four fixtures
    s = V2Search(SearchSpec.make("H4", "1-4,5a"))
    found = s.run((1, 16, 6, 17))
    assert sorted(canonical_form(P) for P in found) == sorted(canonical_form(F) for F in h4_fixtures())
    assert not any(is_isomorphic(a, b) for a, b in combinations(found, 2))


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v", *sys.argv[1:]]))
