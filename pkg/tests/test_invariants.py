from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from strategies import ranked_posets

from rootposet.invariants import (
    MissingProfileData,
    check_properties,
    h_triangle,
    ideal_size_genfun,
    panyushev_orbits,
    panyushev_step,
    parse_properties,
    restricted_panyushev_orbits,
)
from rootposet.poset import antichain_masks, build_poset, chain, mask_of, minimals, rank_vector
from rootposet.profiles import (
    RootSystemProfile,
    catalan_number,
    get_profile,
    rank_vector_from_degrees,
)
from rootposet.qt import HilbertCandidate
from rootposet.rootdata import crystallographic_root_poset, dihedral_poset, h3_fixture, h4_fixtures


def test_rank_vectors_from_degrees():
    assert rank_vector_from_degrees((10, 6, 2)) == [3, 2, 2, 2, 2, 1, 1, 1, 1]
    assert rank_vector_from_degrees((30, 20, 12, 2)) == [4] + [3] * 10 + [2] * 8 + [1] * 10
    assert rank_vector_from_degrees((2,)) == [1]
    with pytest.raises(ValueError):
        rank_vector_from_degrees(())


def test_catalan_numbers():
    assert catalan_number((2, 6, 10), 10) == 32
    assert catalan_number((2, 12, 20, 30), 30) == 280
    for m in range(3, 13):
        assert catalan_number((2, m)) == m + 2
    with pytest.raises(ValueError):
        catalan_number((2, 5), 4)


def test_parse_properties():
    assert parse_properties("1-4") == ("1", "2", "3", "4")
    assert parse_properties("1-5") == ("1", "2", "3", "4", "5-multiset", "5a", "5b")
    assert parse_properties("1-4,5a") == ("1", "2", "3", "4", "5a")
    assert parse_properties("5m,6") == ("5-multiset", "6")
    with pytest.raises(ValueError):
        parse_properties("7")


def test_h_triangle_examples():
    for m in (5, 7, 12):
        assert h_triangle(dihedral_poset(m)) == [[1, m - 2, 0], [0, 2, 0], [0, 0, 1]]
    # 1 + 3st + 12t + 3s^2t^2 + 4st^2 + 8t^2 + s^3t^3
    assert h_triangle(h3_fixture()) == [[1, 12, 8, 0], [0, 3, 4, 0], [0, 0, 3, 0], [0, 0, 0, 1]]
    assert h_triangle(chain(1)) == [[1, 0], [0, 1]]


def test_panyushev_examples():
    P = dihedral_poset(6)
    assert panyushev_step(P, 0) == minimals(P).mask
    assert panyushev_step(P, mask_of([1])) == mask_of([2])
    assert panyushev_step(P, mask_of([2])) == mask_of([1])
    seq = [mask_of([1, 2])]
    while True:
        nxt = panyushev_step(P, seq[-1])
        if nxt == seq[0]:
            break
        seq.append(nxt)
    assert [tuple(i + 1 for i in range(6) if a >> i & 1) for a in seq] == [(1, 2), (3,), (4,), (5,), (6,), ()]


def _fragment_with_8_13():
    # H4 skeleton ranks 1..4 (elements 1..13) with 8 < 13 added
    from rootposet.search.v1 import h4_skeleton

    sk = h4_skeleton()
    pairs = [p for p in sk.required if p[1] <= 13 and p != (9, 13)] + [(8, 13)]
    return build_poset(13, pairs)


def test_modified_fragment_orbit_of_length_8():
    P = _fragment_with_8_13()
    orbit = [[8], [3, 4, 11], [6, 7], [1, 10], [5], [3, 4, 8], [6, 7, 11], [9, 10]]
    for a, b in zip(orbit, orbit[1:] + orbit[:1]):
        assert panyushev_step(P, mask_of(a)) == mask_of(b)


def test_orbit_examples():
    for m in (5, 8):
        orbits = panyushev_orbits(dihedral_poset(m))
        assert sorted(length for length, _ in orbits) == [2, m]
        assert {avg for _, avg in orbits} == {1}
        restricted = restricted_panyushev_orbits(dihedral_poset(m))
        assert [length for length, _ in restricted] == [m - 1]
        assert restricted[0][1] == Fraction(m - 2, m - 1)
    h3 = panyushev_orbits(h3_fixture())
    assert sorted(length for length, _ in h3) == [2, 10, 10, 10]
    assert {avg for _, avg in h3} == {Fraction(3, 2)}
    assert {avg for _, avg in restricted_panyushev_orbits(h3_fixture())} == {Fraction(4, 3)}
    assert get_profile("H4").restricted_average == Fraction(56, 29)
    assert get_profile("H4").orbit_multiset == (2, 3, 5) + (30,) * 9


def test_ideal_size_genfun_examples():
    assert ideal_size_genfun(dihedral_poset(5)).coeffs == [1, 2, 1, 1, 1, 1]
    assert ideal_size_genfun(dihedral_poset(5)).coeffs == HilbertCandidate(((0, 6), (1, 1))).eval_t1().coeffs
    assert ideal_size_genfun(chain(1)).coeffs == [1, 1]
    want = HilbertCandidate(((0, 16), (1, 10), (1, 6))).eval_t1().coeffs
    assert ideal_size_genfun(h3_fixture()).coeffs == want


def test_h3_fixture_passes_everything():
    report = check_properties(h3_fixture(), get_profile("H3"))
    assert report.passed, report.to_text()
    assert report["1"].witness["parabolics"]["simple_roots"]


def test_fig6_posets():
    profile = get_profile("H4")
    for P in h4_fixtures():
        report = check_properties(P, profile)
        assert report.failed() == ["5-multiset", "5b", "6"], report.to_text()
        assert report["5a"].witness["expected_average"] == "2"


def test_broken_top_fails_property_1():
    P = h3_fixture()
    pairs = [p for p in P.cover_pairs() if p[1] != 15]
    Q = build_poset(15, pairs)
    report = check_properties(Q, get_profile("H3"), "1")
    assert not report.passed
    assert len(report["1"].witness["maximals"]) == 2


def test_missing_profile_data():
    bare = RootSystemProfile("X", 2, (5, 2))
    with pytest.raises(MissingProfileData):
        check_properties(dihedral_poset(5), bare, "4")
    with pytest.raises(MissingProfileData):
        check_properties(dihedral_poset(5), bare, "6")


def test_report_formats():
    report = check_properties(h4_fixtures()[0], get_profile("H4"), "1-4,5b")
    text = report.to_text()
    assert "property 5b" in text and "FAIL" in text
    records = report.to_records()
    assert {r["property"] for r in records} == {"1", "2", "3", "4", "5b"}


@pytest.mark.parametrize("name", ["A3", "B4", "F4"])
def test_crystallographic_oracles(name):
    P = crystallographic_root_poset(name)
    profile = get_profile(name)
    assert rank_vector(P) == profile.expected_rank_vector
    assert len(antichain_masks(P)) == profile.catalan
    report = check_properties(P, profile, "1-4,5-multiset,5a")
    assert report.passed, report.to_text()


# -- properties ---------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(ranked_posets())
def test_panyushev_is_a_bijection(P):
    acs = antichain_masks(P)
    images = [panyushev_step(P, a) for a in acs]
    assert sorted(images) == acs
    assert sum(length for length, _ in panyushev_orbits(P)) == len(acs)


@settings(max_examples=60, deadline=None)
@given(ranked_posets())
def test_h_triangle_marginals(P):
    tri = h_triangle(P)
    sizes = Counter(a.bit_count() for a in antichain_masks(P))
    for m in range(len(tri[0])):
        assert sum(row[m] for row in tri) == sizes[m]
    assert sum(map(sum, tri)) == len(antichain_masks(P))
    assert sum(ideal_size_genfun(P).coeffs) == len(antichain_masks(P))
