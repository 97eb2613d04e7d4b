import pytest
from hypothesis import given, settings
from strategies import ranked_posets

from rootposet import kernels
from rootposet.rootdata import dihedral_poset, h3_fixture
from rootposet.search.v2 import SearchSpec, V2Search

py = kernels.backend("python")
cy = kernels.backend("cython")


def test_backend_names():
    assert py.IMPLEMENTATION == "python"
    assert cy.IMPLEMENTATION == "cython"
    assert kernels.IMPLEMENTATION in ("python", "cython")
    with pytest.raises(ValueError):
        kernels.backend("fortran")


def _lists(P):
    return list(P.below), list(P.above)


@settings(max_examples=80, deadline=None)
@given(ranked_posets())
def test_backends_agree(P):
    below, above = _lists(P)
    acs = py.antichains(below, above)
    assert cy.antichains(below, above) == acs
    assert cy.antichains(below, above, 3) == py.antichains(below, above, 3)
    simples = sum(1 << i for i in range(P.n) if not below[i])
    assert cy.census(below, above, simples) == py.census(below, above, simples)
    for a in acs:
        assert cy.ideal(below, a) == py.ideal(below, a)
        assert cy.panyushev(below, a) == py.panyushev(below, a)
    top = 1 << (P.n - 1)
    assert cy.orbits(below, acs, top) == py.orbits(below, acs, top)


def test_cap_returns_none():
    P = h3_fixture()
    below, above = _lists(P)
    assert cy.antichains(below, above, 31) is None
    assert len(cy.antichains(below, above, 32)) == 32


@pytest.mark.parametrize("profile, props", [("I2(7)", "1-4"), ("H3", "1-4"), ("H3", "1-4,5a,5b,6"), ("H3", "1-3")])
def test_v2_dfs_agrees(profile, props):
    out = {}
    for name in ("python", "cython"):
        s = V2Search(SearchSpec.make(profile, props), backend=kernels.backend(name))
        found = s.run()
        out[name] = (sorted(tuple(P.cover_pairs()) for P in found), s.stats.as_dict())
    assert out["python"] == out["cython"]


def test_dihedral_panyushev_values():
    P = dihedral_poset(5)
    below, _ = _lists(P)
    assert cy.panyushev(below, 0) == 0b11
    assert cy.panyushev(below, 1 << 4) == 0


def test_pure_python_switch():
    import os
    import subprocess
    import sys

    env = dict(os.environ, ROOTPOSET_PURE_PYTHON="1")
    code = "from rootposet import kernels; print(kernels.IMPLEMENTATION)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
