import pytest

from rootposet.poset import dumps
from rootposet.search import SearchSpec, V1Spec, WorkUnit, run_search, run_unit, split_work
from rootposet.search.v1 import h4_skeleton, lower_pins, embed_in_skeleton
from rootposet.rootdata import h4_fixtures


def _text(result):
    return "".join(dumps(P) for P in result.posets)


@pytest.mark.parametrize("spec", [SearchSpec.make("H3", "1-3"), SearchSpec.make("H3", "1-3", symmetry_depth=2)])
def test_worker_count_does_not_change_output(spec):
    one = run_search(spec, 2, workers=1)
    four = run_search(spec, 2, workers=4)
    assert _text(one) == _text(four)
    assert one.stats.as_dict() == four.stats.as_dict()
    assert len(one.posets) == 18


def test_split_depth_does_not_change_output():
    spec = SearchSpec.make("H3", "1-4")
    runs = [run_search(spec, d) for d in (0, 1, 3)]
    assert len({_text(r) for r in runs}) == 1
    assert len({tuple(sorted(r.stats.as_dict()["pruned"].items())) for r in runs}) == 1
    assert [r.units for r in runs][0] == 1


def test_units_are_plain_data():
    units = split_work(SearchSpec.make("I2(7)", "1-4"), 1)
    assert all(isinstance(u, WorkUnit) for u in units)
    forms, stats = run_unit(units[0])
    assert forms == sorted(forms)
    assert set(stats) == {"nodes", "leaves", "pruned"}
    with pytest.raises(ValueError):
        split_work(SearchSpec.make("I2(7)", "1-4"), 99)
    with pytest.raises(ValueError):
        split_work(SearchSpec.make("I2(7)", "1-4"), -1)


def test_v1_units():
    sk = h4_skeleton()
    E = embed_in_skeleton(h4_fixtures()[0], sk)
    pins = tuple(sorted(lower_pins(sk, E, keep_free=range(33, 37)).items()))
    spec = V1Spec(("1", "2", "3", "4", "5a"), pins)
    one = run_search(spec, 0)
    split = run_search(spec, 36, workers=2)
    assert _text(one) == _text(split)
    assert len(one.posets) >= 1
