from fractions import Fraction

import pytest

from mvfix.corpus import build_example, example_gauge, tau_sequence
from mvfix.errors import CodomainViolation, ModeMismatch, NegativeArgument, NoProbesRightOfT0, ZeroDistancePair
from mvfix.gauges import (Constant, Rule, Tabulated, beta_of, check_geraghty_class,
                          check_mizoguchi_takahashi, estimate_nadler_constant, evaluate)
from mvfix.maps import RuleMap, TableMap
from mvfix.metric import Euclidean, Point, SupNorm
from mvfix.solver import all_pairs
from mvfix.taunum import explicit_tau, tau

EPS = [Fraction(1, 2 ** k) for k in range(1, 11)]
half = Fraction(1, 2)


def test_evaluate_examples():
    assert evaluate(Constant(half), 17.3) == 0.5
    g = example_gauge(10)
    assert evaluate(g, Fraction(1, 4)) == Fraction(3, 4)
    assert evaluate(g, Fraction(3, 10)) == 0
    assert evaluate(g, 0.3) == 0.0
    assert evaluate(g, 0.25) == 0.75            # float argument matches the key within tolerance


def test_evaluate_errors():
    with pytest.raises(NegativeArgument):
        evaluate(Constant(half), -1)
    with pytest.raises(CodomainViolation):
        Constant(1)
    with pytest.raises(CodomainViolation):
        Tabulated([(Fraction(1), Fraction(3, 2))])
    with pytest.raises(ModeMismatch):
        evaluate(Constant(0.5), Fraction(1))
    bad = Rule("ratio", {"c": Fraction(-1, 2)})
    with pytest.raises(CodomainViolation):
        evaluate(bad, Fraction(1))


def test_rules():
    r = Rule("ratio")
    assert evaluate(r, Fraction(1)) == half
    assert evaluate(r, 0) == 0
    assert abs(evaluate(Rule("log_ratio"), 1.0) - 0.6931471805599453) < 1e-15
    assert evaluate(Rule("scaled_exp", {"c": 0.5}), 0.0) == 0.5


def test_beta_examples():
    assert evaluate(beta_of(Constant(0)), Fraction(7)) == half
    assert evaluate(beta_of(example_gauge(5)), half) == Fraction(3, 4)
    assert beta_of(Constant(Fraction(1, 3))) == Constant(Fraction(2, 3))
    b = beta_of(Rule("ratio"))
    assert evaluate(b, Fraction(1)) == Fraction(3, 4)


@pytest.mark.parametrize("g", [Constant(Fraction(1, 3)), example_gauge(12), Rule("ratio")])
def test_beta_lies_between_alpha_and_one(g):
    for t in tau_sequence(12) + [Fraction(k, 3) for k in range(0, 30)]:
        a, b = evaluate(g, t), evaluate(beta_of(g), t)
        assert a <= b < 1 and (a < b)


def test_beta_stays_in_class_s():
    # beta is near 1 only where alpha is; halving the grid with slack 2 is enough
    g = example_gauge(40)
    rep = check_geraghty_class(beta_of(g), tau_sequence(40), [e / 2 for e in EPS], slack=2)
    assert rep.verdict == "PASS"


def test_class_s_cases():
    rep = check_geraghty_class(Constant(half), [Fraction(k) for k in range(1, 20)], [Fraction(1, 4), Fraction(1, 8)])
    assert rep.verdict == "PASS" and rep.sups == (None, None)

    rep = check_geraghty_class(example_gauge(200), tau_sequence(200), EPS)
    assert rep.verdict == "PASS"
    # tau_200 ~ 0.00485 > 2^-8, so the three deepest levels have no witness
    assert all(s is None or s <= e for e, s in zip(rep.epsilons, rep.sups))
    assert [s is None for s in rep.sups] == [False] * 7 + [True] * 3

    rep = check_geraghty_class(Rule("ratio"), [Fraction(k) for k in range(1, 101)], EPS)
    assert rep.verdict == "FAIL"
    # t/(1+t) >= 1 - eps iff t >= 1/eps - 1: the max probe 100 witnesses every level it reaches
    for e, s in zip(rep.epsilons, rep.sups):
        assert s == (100 if 100 >= 1 / e - 1 else None)


def test_class_s_grid_validation():
    with pytest.raises(ValueError):
        check_geraghty_class(Constant(half), [Fraction(1)], [Fraction(1, 8), Fraction(1, 4)])


def test_mt_cases():
    probes = [Fraction(1, k) for k in range(1, 50)]
    rep = check_mizoguchi_takahashi(Constant(Fraction(2, 5)), Fraction(0), probes)
    assert rep.limsup == Fraction(2, 5) and rep.verdict == "PASS-MT"

    taus = tau_sequence(200)
    rep = check_mizoguchi_takahashi(example_gauge(200), Fraction(0), taus)
    assert rep.verdict == "FAIL-MT"
    assert rep.limsup == 1 - tau(200) and rep.limsup > Fraction(99, 100)

    grid = [1 + Fraction(k, 10 ** 6) for k in range(1, 200)]
    rep = check_mizoguchi_takahashi(Rule("ratio"), Fraction(1), grid)
    assert abs(rep.limsup - half) < Fraction(1, 10 ** 5) and rep.verdict == "PASS-MT"
    with pytest.raises(NoProbesRightOfT0):
        check_mizoguchi_takahashi(Constant(half), Fraction(5), grid)


def test_mt_estimates_shrink_with_window():
    taus = tau_sequence(60)
    rep = check_mizoguchi_takahashi(example_gauge(60), Fraction(0), taus)
    seen = [s for _, s in rep.estimates if s is not None]
    assert seen == sorted(seen, reverse=True) or seen == sorted(seen)  # monotone along windows
    assert max(seen) == rep.limsup


def test_nadler_trivial_maps():
    pts = [Point.dense([Fraction(k)]) for k in range(1, 6)]
    c = pts[0]
    const = TableMap({p: [c] for p in pts})
    assert estimate_nadler_constant(const, Euclidean(), all_pairs(pts)).ratio == 0
    halve = RuleMap(lambda x: Point.dense([x.coords[0] / 2]))
    est = estimate_nadler_constant(halve, Euclidean(), all_pairs(pts))
    assert est.ratio == half
    with pytest.raises(ZeroDistancePair):
        estimate_nadler_constant(halve, Euclidean(), [(c, c)])


def _oracle_ratio(N, m, n):
    """H(Tx_m, Tx_n)/d(x_m, x_n) for the truncated example, straight from the definitions."""
    t = [None] + [explicit_tau(k) for k in range(1, N + 1)]
    img = lambda k: list(range(k + 1, N + 1)) if k < N else [N]
    d = lambda i, j: 0 if i == j else t[min(i, j)]
    A, B = img(m), img(n)
    h = max(max(min(d(a, b) for b in B) for a in A), max(min(d(a, b) for a in A) for b in B))
    return h / d(m, n)


@pytest.mark.parametrize("N", [4, 6, 8])
def test_nadler_example_matches_brute_force(N):
    inst = build_example(N)
    est = estimate_nadler_constant(inst.map, inst.metric, all_pairs(inst.points))
    oracle = max(_oracle_ratio(N, m, n) for n in range(1, N + 1) for m in range(n + 1, N + 1))
    assert est.ratio == oracle
    # the sentinel makes the top pair contribute 0, so the max sits one index lower
    assert oracle == 1 - explicit_tau(N - 2)


def test_nadler_monotone_in_pairs_and_exceeds_r():
    inst = build_example(12)
    pairs = all_pairs(inst.points)
    prev = Fraction(0)
    for k in range(1, len(pairs) + 1):
        cur = estimate_nadler_constant(inst.map, inst.metric, pairs[:k]).ratio
        assert cur >= prev
        prev = cur
    assert prev > Fraction(9, 10)
