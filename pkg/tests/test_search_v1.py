import pytest

from rootposet import kernels
from rootposet.canon import is_isomorphic
from rootposet.rootdata import h4_fixtures
from rootposet.search.v1 import (
    JOIN_TARGET,
    LOWER_END,
    UPPER_START,
    V1Search,
    embed_in_skeleton,
    enumerate_upper_parts,
    h4_skeleton,
    lower_pins,
    search_v1,
    upper_choice,
)


@pytest.fixture(scope="module")
def skeleton():
    return h4_skeleton()


@pytest.fixture(scope="module")
def all_upper(skeleton):
    return enumerate_upper_parts(skeleton, None)


@pytest.fixture(scope="module")
def embedded(skeleton):
    return [embed_in_skeleton(P, skeleton) for P in h4_fixtures()]


def test_skeleton_shape(skeleton):
    assert len(skeleton.lower_variables) == 37
    assert len(skeleton.upper_variables) == 14
    assert skeleton.rank_vector == [4] + [3] * 10 + [2] * 8 + [1] * 10
    assert all(y <= LOWER_END for _, y in skeleton.lower_variables)
    assert all(x >= UPPER_START for x, _ in skeleton.upper_variables)
    # top level first
    assert skeleton.rank[skeleton.lower_variables[0][1] - 1] == 12
    assert (9, 13) in skeleton.required and (8, 13) in skeleton.forbidden


def test_upper_records(skeleton, all_upper):
    assert len(all_upper) == 2 ** 14
    for rec in all_upper[::997]:
        assert rec.recompute() == (rec.a2, rec.g35, rec.g36)
    filtered = enumerate_upper_parts(skeleton)
    assert 0 < len(filtered) < len(all_upper)
    assert {r.present for r in filtered} <= {r.present for r in all_upper}


def test_fig6_posets_embed(skeleton, embedded):
    for P, E in zip(h4_fixtures(), embedded):
        assert E is not None and is_isomorphic(P, E)
        values = skeleton.assignment(E)
        assert values is not None and len(values) == 51
        assert len(upper_choice(skeleton, E)) == sum(values[37:])


def test_join_reading_on_fig6(skeleton, all_upper, embedded):
    by_choice = {r.present: r for r in all_upper}
    middle = ((1 << 34) - 1) & ~0xF
    for E in embedded:
        s = V1Search("1-4", skeleton, all_upper)
        L = s.lower_poset(skeleton.assignment(E)[:37])
        acs = kernels.antichains(L.below, L.above)
        b2 = sum(1 for a in acs if a.bit_count() == 2 and not a & ~middle)
        l35 = (middle & ~L.below[34]).bit_count()
        l36 = (middle & ~L.below[35]).bit_count()
        rec = by_choice[upper_choice(skeleton, E)]
        assert rec.a2 + b2 + l35 * rec.g36 + l36 * rec.g35 == JOIN_TARGET
        # the same number counted directly: 2-antichains free of simple roots
        full = kernels.antichains(E.below, E.above)
        assert sum(1 for a in full if a.bit_count() == 2 and not a & 0xF) == JOIN_TARGET


def test_prefixes(skeleton, all_upper):
    s = V1Search("1-4", skeleton, all_upper)
    assert s.free_variables == 37
    assert len(s.prefixes(6)) == 25
    with pytest.raises(ValueError):
        search_v1("1-4", skeleton, all_upper)


def test_pinned_run_recovers_fig6(skeleton, all_upper, embedded):
    E = embedded[0]
    pins = lower_pins(skeleton, E, keep_free=range(30, 34))
    s = V1Search("1-4,5a", skeleton, all_upper, pins)
    found = s.run()
    assert any(is_isomorphic(P, E) for P in found)
    assert all(P.n == 60 for P in found)
    # the same neighbourhood has nothing once orbit lengths are required
    assert search_v1("1-5", skeleton, None, pins) == []


def test_pins_validate(skeleton):
    with pytest.raises(ValueError):
        lower_pins(skeleton, h4_fixtures()[0])
