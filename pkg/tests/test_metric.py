import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mvfix.errors import EmptySet, IncompatiblePoints, InvalidMetricTable
from mvfix.metric import (Euclidean, ExplicitTable, Point, SupNorm, distance, point_to_set_distance,
                          validate_metric_table)
from mvfix.numeric import Mode, tolerance
from mvfix.taunum import tau

sup, euc = SupNorm(), Euclidean()


def x(n):
    return Point.sparse({n: tau(n)}, id=f"x{n}")


def test_distance_examples():
    p = Point.dense([1.0, 2.0])
    assert distance(sup, p, p) == 0
    assert distance(sup, x(2), x(1)) == Fraction(1, 2)
    assert distance(euc, Point.dense([0.0, 0.0]), Point.dense([3.0, 4.0])) == 5
    assert distance(euc, Point.dense([0, 0]), Point.dense([3, 4])) == 5   # exact mode


def test_incompatible_points():
    with pytest.raises(IncompatiblePoints):
        distance(euc, Point.dense([0.0]), Point.dense([0.0, 1.0]))
    with pytest.raises(IncompatiblePoints):
        distance(sup, Point.dense([0.0]), Point.dense([Fraction(0)]))
    with pytest.raises(IncompatiblePoints):
        distance(euc, x(1), x(2))


def test_point_to_set_examples():
    a = Point.dense([1.0, 1.0])
    assert point_to_set_distance(euc, a, [Point.dense([0.0, 0.0]), a]) == 0
    # brute force: every candidate sits at tau_1 from x_1
    cands = [x(n) for n in range(2, 6)]
    assert {distance(sup, x(1), c) for c in cands} == {Fraction(1, 2)}
    assert point_to_set_distance(sup, x(1), cands) == Fraction(1, 2)
    origin = Point.dense([0.0, 0.0])
    oracle = min(math.hypot(1, 0), math.hypot(0, 2))
    assert point_to_set_distance(euc, origin, [Point.dense([1.0, 0.0]), Point.dense([0.0, 2.0])]) == oracle == 1
    with pytest.raises(EmptySet):
        point_to_set_distance(euc, origin, [])


def test_sparse_stores_no_zeros_and_equality_is_canonical():
    p = Point.sparse({1: Fraction(0), 3: Fraction(1, 4)}, id="p")
    q = Point.sparse({3: Fraction(1, 4)}, id="other label")
    assert p.data == ((3, Fraction(1, 4)),)
    assert p == q and hash(p) == hash(q)


def test_validate_metric_table():
    assert validate_metric_table(["a"], [[0]]).ok
    bad = validate_metric_table(["a", "b", "c"], [[0, 1, 3], [1, 0, 1], [3, 1, 0]])
    assert not bad.ok and bad.kind == "triangle" and bad.labels == ("a", "b", "c")
    assert validate_metric_table(["a", "b"], [[0, 1], [2, 0]]).kind == "symmetry"
    assert validate_metric_table(["a", "b"], [[1, 1], [1, 0]]).kind == "diagonal"
    with pytest.raises(InvalidMetricTable):
        ExplicitTable(["a", "b", "c"], [[0, 1, 3], [1, 0, 1], [3, 1, 0]])


def test_example_table_is_a_metric():
    # table from the formula d(x_m, x_n) = tau_min(m, n); check every triple
    n = 5
    rows = [[0 if i == j else tau(min(i, j)) for j in range(1, n + 1)] for i in range(1, n + 1)]
    assert validate_metric_table([f"x{i}" for i in range(1, n + 1)], rows).ok
    # and the sparse sup-norm reproduces it
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            assert distance(sup, x(i), x(j)) == rows[i - 1][j - 1]


def test_table_tolerance_in_float_mode():
    rows = [[0.0, 1.0, 2.0 + 1e-13], [1.0, 0.0, 1.0], [2.0 + 1e-13, 1.0, 0.0]]
    assert validate_metric_table(["a", "b", "c"], rows).ok
    with tolerance(0.0):
        assert not validate_metric_table(["a", "b", "c"], rows).ok


coord = st.fractions(min_value=-5, max_value=5, max_denominator=12)
fcoord = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(coord, coord, coord), min_size=3, max_size=3))
def test_axioms_exact_sup(ps):
    p, q, r = (Point.dense(c) for c in ps)
    assert distance(sup, p, q) == distance(sup, q, p)
    assert distance(sup, p, r) <= distance(sup, p, q) + distance(sup, q, r)
    assert (distance(sup, p, q) == 0) == (p == q)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(fcoord, fcoord), min_size=3, max_size=3))
def test_axioms_float_euclidean(ps):
    p, q, r = (Point.dense(c) for c in ps)
    assert abs(distance(euc, p, q) - distance(euc, q, p)) <= 1e-12
    assert distance(euc, p, r) <= distance(euc, p, q) + distance(euc, q, r) + 1e-9


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(coord, coord), min_size=1, max_size=6),
       st.lists(st.tuples(coord, coord), min_size=1, max_size=6), st.tuples(coord, coord))
def test_point_to_union_is_min(A, B, xc):
    pt = Point.dense(xc)
    PA = [Point.dense(c) for c in A]
    PB = [Point.dense(c) for c in B]
    assert point_to_set_distance(sup, pt, PA + PB) == min(point_to_set_distance(sup, pt, PA),
                                                          point_to_set_distance(sup, pt, PB))


def test_sparse_sup_equals_dense_padding():
    rng = random.Random(7)
    for _ in range(200):
        width = rng.randint(1, 12)
        a = {i: Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for i in rng.sample(range(width), rng.randint(0, width))}
        b = {i: Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for i in rng.sample(range(width), rng.randint(0, width))}
        pa, pb = Point.sparse(a, mode=Mode.EXACT), Point.sparse(b, mode=Mode.EXACT)
        da = Point.dense([a.get(i, Fraction(0)) for i in range(width)])
        db = Point.dense([b.get(i, Fraction(0)) for i in range(width)])
        assert distance(sup, pa, pb) == distance(sup, da, db) == distance(sup, pa, db)
