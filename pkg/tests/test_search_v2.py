import pytest

from rootposet.canon import canonical_form, is_isomorphic
from rootposet.invariants import check_properties, parse_properties
from rootposet.profiles import get_profile
from rootposet.rootdata import crystallographic_root_poset, dihedral_poset, h3_fixture
from rootposet.search.v2 import SearchSpec, V2Search, dedupe, search_v2


def _forms(posets):
    return sorted(canonical_form(P) for P in posets)


@pytest.mark.parametrize("m", [5, 7, 8, 9, 10, 11, 12])
def test_dihedral_unique(m):
    found = search_v2(f"I2({m})", "1-2")
    assert len(found) == 1
    assert is_isomorphic(found[0], dihedral_poset(m))
    assert check_properties(found[0], get_profile(f"I2({m})")).passed


def test_h3_unique():
    found = search_v2("H3", "1-5")
    assert len(found) == 1 and is_isomorphic(found[0], h3_fixture())


def test_h3_weaker_filters():
    assert len(search_v2("H3", "1-4")) == 3
    assert len(search_v2("H3", "1-3")) == 18


@pytest.mark.parametrize("props", ["1-2", "1-4", "1-5", "1-4,6"])
@pytest.mark.parametrize("profile", ["I2(5)", "I2(8)"])
def test_pruning_is_sound_on_dihedral(profile, props):
    assert _forms(search_v2(profile, props)) == _forms(search_v2(profile, props, prune=False))


@pytest.mark.parametrize("props", ["1-4", "1-4,5a", "1-4,5-multiset", "1-4,5b", "1-4,6", "1-6"])
def test_pruning_is_sound_on_h3(props):
    # the unpruned tree is walked once and filtered per property set
    assert _forms(search_v2("H3", props)) == _forms(search_v2("H3", props, prune=False))


def test_every_result_passes_the_filter():
    props = parse_properties("1-3")
    for P in search_v2("H3", props):
        assert check_properties(P, get_profile("H3"), props, parabolic=False).passed


@pytest.mark.parametrize("depth", [1, 2, 3, 5])
def test_symmetry_reduction_keeps_results(depth):
    base = _forms(search_v2("H3", "1-3"))
    assert _forms(search_v2("H3", "1-3", symmetry_depth=depth)) == base
    s = V2Search(SearchSpec.make("H3", "1-3", symmetry_depth=depth))
    assert len(s.units()) <= len(s.prefixes(depth))


def test_prefix_runs_partition_the_tree():
    s = V2Search(SearchSpec.make("H3", "1-3"))
    whole = s.run()
    parts = [P for p in s.prefixes(2) for P in s.run(p)]
    assert _forms(whole) == _forms(parts)


def test_partial_poset():
    s = V2Search(SearchSpec.make("H3", "1-4"))
    (first,) = s.prefixes(1)[:1]
    P = s.partial(first)
    assert P.n == 5 and [P.rank.count(r) for r in (1, 2)] == [3, 2]


@pytest.mark.parametrize("name", ["B4", "F4"])
def test_crystallographic_unique(name):
    found = search_v2(name, "1-5")
    assert len(found) == 1
    assert is_isomorphic(found[0], crystallographic_root_poset(name))


def test_seeded_search():
    H = h3_fixture()
    from rootposet.poset import induced_subposet, mask_of

    seed = induced_subposet(H, mask_of(range(1, 6)))
    found = search_v2("H3", "1-5", seed=seed)
    assert len(found) == 1 and is_isomorphic(found[0], H)
    with pytest.raises(ValueError):
        search_v2("H3", "1-5", seed=dihedral_poset(5))


def test_dedupe_is_sorted_and_unique():
    P = h3_fixture()
    out = dedupe([P, P, dihedral_poset(5)])
    assert len(out) == 2
    assert _forms(out) == [canonical_form(Q) for Q in out]
