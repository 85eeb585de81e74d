from fractions import Fraction

import mpmath
import pytest

from mvfix.corpus import build_example, run_example_orbit, tau_sequence, verify_example
from mvfix.gauges import evaluate
from mvfix.solver import FixedPoint, verify_orbit_conditions
from mvfix.taunum import tau


def recurrence_first_below(threshold, limit=1000):
    with mpmath.workprec(400):
        bound = mpmath.mpf(threshold.numerator) / threshold.denominator
        t = mpmath.mpf(1) / 2
        for n in range(1, limit):
            if t < bound:
                return n
            t = (1 - t) * t
    raise AssertionError("not reached")


def test_tau_values():
    assert tau_sequence(4) == [Fraction(1, 2), Fraction(1, 4), Fraction(3, 16), Fraction(39, 256)]


def test_build_example_3():
    inst = build_example(3)
    assert len(inst.points) == 3
    assert inst.image(1) == inst.map.image(inst.x(1))
    assert [p.id for p in inst.image(1)] == ["x2", "x3"]
    assert [p.id for p in inst.image(2)] == ["x3"]
    assert [p.id for p in inst.image(3)] == ["x3"]
    assert evaluate(build_example(5).gauge, tau(2)) == Fraction(3, 4)
    assert inst.metric.distance(inst.x(3), inst.x(2)) == Fraction(1, 4)
    with pytest.raises(ValueError):
        build_example(2)


def test_verify_example_small():
    rep = verify_example(5)
    for key in ("a_distance_formula", "b_hausdorff_formula", "c_gauge_equality", "e_class_S"):
        assert rep.claims[key].verdict == "PASS", key
    assert rep.claims["d_no_nadler_subset"].verdict == "SKIPPED"
    assert '"truncation_sentinel": "x5"' in rep.to_json()
    assert "sentinel x5" in rep.to_text()


def test_nadler_witness_depth_200():
    rep = verify_example(200, Fraction(9, 10), sweep_depth=4)
    d = rep.claims["d_no_nadler_subset"]
    assert d.verdict == "PASS"
    assert d.details["first_index"] == recurrence_first_below(Fraction(1, 10)) == 7
    assert d.details["ratio_equals_1_minus_tau_n"]


def test_mt_failure_depth_200():
    f = verify_example(200, sweep_depth=4).claims["f_mizoguchi_takahashi"]
    assert f.verdict == "FAIL-MT" and f.details["equals_1_minus_tau_N"]
    assert f.details["limsup_estimate"] == "1 - tau(200)"
    assert f.details["approx"] > 0.99


def test_orbit_depth_6():
    trace = run_example_orbit(6, 1)
    assert trace.step_distances == [Fraction(1, 2), Fraction(1, 4), Fraction(3, 16),
                                    Fraction(39, 256), Fraction(8463, 65536)]
    assert isinstance(trace.outcome, FixedPoint) and trace.outcome.point.id == "x6"
    assert "sentinel x6" in trace.summary()
    assert verify_orbit_conditions(trace, build_example(6).gauge).ok


def test_orbit_from_sentinel():
    trace = run_example_orbit(6, 6)
    assert trace.n_steps == 0 and isinstance(trace.outcome, FixedPoint)
