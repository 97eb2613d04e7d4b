import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rootposet.qt import (
    HilbertCandidate,
    QPoly,
    QTPoly,
    conjecture_h4_polynomial,
    decompose_q2_brackets,
    enumerate_hilbert_candidates,
    eval_t1,
    eval_t_qinv_shift,
    expand_q2_brackets,
    h4_product_formula,
    q_bracket,
    qt_bracket,
)

# (multiplicity, shifts of [49], [41], [37], [31], [25], [21], [13])
PAPER_SEVEN_SHIFTS = [
    (2, (1, 3, 1, 4, 2, 1, 2)),
    (10, (1, 1, 3, 1, 4, 2, 2)),
    (12, (1, 1, 4, 1, 3, 2, 2)),
    (16, (1, 1, 4, 1, 2, 2, 3)),
    (20, (1, 3, 1, 1, 4, 2, 2)),
    (20, (1, 1, 3, 1, 2, 2, 4)),
    (40, (1, 3, 1, 1, 2, 2, 4)),
]
PAPER_SEVEN = [
    ((0, 61),) + tuple(zip(shifts, (49, 41, 37, 31, 25, 21, 13))) + ((6, 1), (10, 1))
    for _, shifts in PAPER_SEVEN_SHIFTS
]


def test_brackets():
    assert qt_bracket(1) == QTPoly({(0, 0): 1})
    assert qt_bracket(3) == QTPoly({(2, 0): 1, (1, 1): 1, (0, 2): 1})
    for n in range(1, 8):
        b = qt_bracket(n)
        assert len(b) == n
        assert all(i + j == n - 1 for i, j, _ in b.triples())
    with pytest.raises(ValueError):
        qt_bracket(0)
    assert q_bracket(4).coeffs == [1, 1, 1, 1]


def test_dihedral_catalan_polynomial():
    # [6] + qt at q = t = 1 gives Cat(I2(5)) = 7
    p = qt_bracket(6) + QTPoly.monomial(1, 1)
    assert p(1, 1) == 7
    assert eval_t1(p).coeffs == [1, 2, 1, 1, 1, 1]


def test_specialisations():
    h3 = HilbertCandidate(((0, 16), (1, 10), (1, 6)))
    assert eval_t1(h3.expand()) == h3.eval_t1()
    assert eval_t1(QTPoly({(0, 0): 1})).coeffs == [1]
    assert eval_t_qinv_shift(QTPoly.monomial(1, 1) * qt_bracket(49), 60) == q_bracket(49, 2).shift(12)
    with pytest.raises(ValueError):
        eval_t_qinv_shift(qt_bracket(5), 2)


def test_product_formula():
    u = h4_product_formula()
    assert u.degree == 120
    assert u.is_palindromic()
    assert u(1) == 280


def test_decomposition_of_product_formula():
    parts = decompose_q2_brackets(h4_product_formula())
    assert parts == [(0, 61), (12, 49), (20, 41), (24, 37), (30, 31), (36, 25), (40, 21), (48, 13), (60, 1), (60, 1)]


def test_decomposition_small_cases():
    assert decompose_q2_brackets(q_bracket(7, 2)) == [(0, 7)]
    # greedy choice pinned: 1 + q^2 + q^4 then the lone q^3
    assert decompose_q2_brackets(QPoly([1, 0, 1, 1, 1])) == [(0, 3), (3, 1)]
    with pytest.raises(ValueError):
        decompose_q2_brackets(QPoly([1, -1]))


def test_conjecture():
    conj = conjecture_h4_polynomial()
    assert conj.expand()(1, 1) == 280
    assert eval_t_qinv_shift(conj.expand(), 60) == h4_product_formula()
    assert sorted((n for _, n in conj.summands), reverse=True) == [61, 49, 41, 37, 31, 25, 21, 13, 1, 1]


def test_hilbert_candidates():
    cands = enumerate_hilbert_candidates()
    assert len(cands) == 180
    assert len({tuple(c.eval_t1().coeffs) for c in cands}) == 180
    assert conjecture_h4_polynomial() in cands
    for summands in PAPER_SEVEN:
        assert HilbertCandidate(summands) in cands
    target = h4_product_formula()
    for c in cands:
        assert c.expand()(1, 1) == 280
        assert eval_t_qinv_shift(c.expand(), 60) == target


# -- properties ---------------------------------------------------------------


@given(st.integers(1, 30))
def test_bracket_identities(n):
    b = qt_bracket(n)
    assert b.swap() == b
    assert eval_t1(b) == q_bracket(n)
    q_minus_t = QTPoly({(1, 0): 1, (0, 1): -1})
    assert b * q_minus_t == QTPoly({(n, 0): 1, (0, n): -1})


@st.composite
def bracket_lists(draw):
    # brackets sharing one centre, as in a palindromic sum: each range nests in the previous
    bs = sorted(draw(st.lists(st.integers(1, 40), min_size=1, max_size=6, unique=True)), reverse=True)
    centre = bs[0] - 1 + draw(st.integers(0, 10))
    return [(centre - b + 1, b) for b in bs]


@settings(max_examples=100)
@given(bracket_lists())
def test_decomposition_round_trip(parts):
    assert decompose_q2_brackets(expand_q2_brackets(parts)) == parts
