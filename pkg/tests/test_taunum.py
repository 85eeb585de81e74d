from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mvfix.errors import ModeMismatch
from mvfix.taunum import FOLD_INDEX, TauNumber, tau


def oracle_taus(n):
    t = [None, Fraction(1, 2)]
    for _ in range(n - 1):
        t.append((1 - t[-1]) * t[-1])
    return t


ORACLE = oracle_taus(16)


def test_small_indices_are_fractions():
    assert tau(1) == Fraction(1, 2)
    assert tau(2) == Fraction(1, 4)
    assert tau(4) == Fraction(39, 256)
    assert all(isinstance(tau(k), Fraction) for k in range(1, FOLD_INDEX + 1))
    assert isinstance(tau(FOLD_INDEX + 1), TauNumber)


def test_recurrence_is_structural():
    for k in range(FOLD_INDEX + 1, 300, 37):
        t = tau(k)
        product = (1 - t) * t
        assert isinstance(product, TauNumber)
        assert product.numerator_terms == tau(k + 1).numerator_terms
        assert product == tau(k + 1)


def test_recurrence_across_the_fold():
    t = tau(FOLD_INDEX)
    assert (1 - t) * t == tau(FOLD_INDEX + 1)


def test_generators_agree_with_explicit_values():
    for k in range(FOLD_INDEX + 1, 17):
        assert tau(k) == ORACLE[k]
        assert ORACLE[k] == tau(k)
        assert not tau(k) == ORACLE[k] + Fraction(1, 10 ** 30)


def test_strictly_decreasing_to_200():
    seq = [tau(k) for k in range(1, 201)]
    assert all(a > b > 0 for a, b in zip(seq, seq[1:]))
    assert tau(200) < Fraction(1, 100)


def test_division_and_ratio_identity():
    ratio = tau(51) / tau(50)
    assert ratio == 1 - tau(50)
    assert ratio > Fraction(9, 10)
    assert ratio < 1


def test_float_mixing_is_an_error():
    with pytest.raises(ModeMismatch):
        tau(12) + 0.5
    with pytest.raises(ModeMismatch):
        tau(12) < 0.5


def test_str_round_trip_forms():
    assert str(tau(12)) == "tau(12)"
    assert str(1 - tau(12)) == "1 - tau(12)"


def test_hash_matches_structural_equality():
    assert hash((1 - tau(20)) * tau(20)) == hash(tau(21))
    assert len({tau(20), (1 - tau(20)) * tau(20), tau(21)}) == 2


# random expressions evaluated both symbolically and over explicit Fractions
_index = st.integers(min_value=1, max_value=14)
_coef = st.fractions(min_value=-4, max_value=4, max_denominator=8)


@st.composite
def expressions(draw, depth=3):
    if depth == 0 or draw(st.booleans()):
        if draw(st.booleans()):
            k = draw(_index)
            return (lambda k=k: tau(k)), (lambda k=k: ORACLE[k])
        c = draw(_coef)
        return (lambda c=c: c), (lambda c=c: c)
    op = draw(st.sampled_from(["+", "-", "*"]))
    (a1, a2), (b1, b2) = draw(expressions(depth - 1)), draw(expressions(depth - 1))
    f = {"+": lambda x, y: x + y, "-": lambda x, y: x - y, "*": lambda x, y: x * y}[op]
    return (lambda: f(a1(), b1())), (lambda: f(a2(), b2()))


@settings(max_examples=200, deadline=None)
@given(expressions(), expressions())
def test_ring_operations_match_explicit_arithmetic(e1, e2):
    sym1, exact1 = e1[0](), e1[1]()
    sym2, exact2 = e2[0](), e2[1]()
    assert (sym1 == sym2) == (exact1 == exact2)
    assert (sym1 < sym2) == (exact1 < exact2)
    assert (sym1 - sym2 == 0) == (exact1 == exact2)
