"""The l-infinity example: x_n = tau_n e_n, T x_n = {x_{n+1}, x_{n+2}, ...}.

The infinite space is cut at depth N with the closure T x_N = {x_N} (the
truncation sentinel), which keeps T total on {x_1, ..., x_N}.  Every claim
check skips or flags pairs that touch the sentinel.

All quantities are exact: tau_k is a Fraction for small k and a symbolic
``TauNumber`` beyond, so equalities such as H(Tx_m, Tx_n) = tau_{n+1} are
decided exactly at any depth.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction

from mvfix.gauges import (Tabulated, check_geraghty_class, check_mizoguchi_takahashi, evaluate)
from mvfix.hausdorff import FiniteSet, hausdorff
from mvfix.maps import TableMap
from mvfix.metric import CachedMetric, Point, SupNorm
from mvfix.numeric import format_scalar
from mvfix.solver import iterate
from mvfix.taunum import tau

DEFAULT_SWEEP_DEPTH = 30
DEFAULT_EPS_GRID = tuple(Fraction(1, 2 ** k) for k in range(1, 11))


def tau_sequence(N: int) -> list:
    return [tau(n) for n in range(1, N + 1)]


def example_gauge(N: int) -> Tabulated:
    """alpha(tau_n) = 1 - tau_n for n <= N, 0 elsewhere."""
    return Tabulated([(t, 1 - t) for t in tau_sequence(N)], Fraction(0))


@dataclass
class ExampleInstance:
    depth: int
    taus: list
    points: list            # x_1 .. x_N, index i holds x_{i+1}
    map: TableMap
    gauge: Tabulated
    metric: SupNorm = field(default_factory=SupNorm)
    sentinel: int = 0       # index of the point closed up by T x_N = {x_N}

    def x(self, n: int) -> Point:
        return self.points[n - 1]

    def image(self, n: int) -> FiniteSet:
        return self.map.image(self.x(n))


def build_example(N: int) -> ExampleInstance:
    if N < 3:
        raise ValueError("the example needs depth N >= 3")
    taus = tau_sequence(N)
    points = [Point.sparse({n: taus[n - 1]}, id=f"x{n}") for n in range(1, N + 1)]
    table = {points[n - 1]: points[n:] for n in range(1, N)}
    table[points[-1]] = [points[-1]]
    return ExampleInstance(N, taus, points, TableMap(table), example_gauge(N), SupNorm(), N)


@dataclass
class Claim:
    verdict: str
    details: dict = field(default_factory=dict)


@dataclass
class ExampleReport:
    depth: int
    sweep_depth: int
    claims: dict
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.verdict in ("PASS", "FAIL-MT", "SKIPPED") for c in self.claims.values())

    def to_dict(self) -> dict:
        return {"depth": self.depth, "sweep_depth": self.sweep_depth,
                "truncation_sentinel": f"x{self.depth}",
                "claims": {k: {"verdict": c.verdict, **c.details} for k, c in self.claims.items()},
                "seconds": round(self.seconds, 3)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = [f"example depth {self.depth} (equality sweep depth {self.sweep_depth}, "
                 f"sentinel x{self.depth} excluded from pair checks)"]
        for key, c in self.claims.items():
            extra = ", ".join(f"{k}={v}" for k, v in c.details.items()
                              if not isinstance(v, (list, dict)))
            lines.append(f"  {key:<28} {c.verdict:<8} {extra}")
        return "\n".join(lines)


def _sweep(inst: ExampleInstance, metric) -> tuple[Claim, Claim, Claim]:
    N = inst.depth
    taus = inst.taus
    bad_d = bad_h = bad_i = None
    n_d = n_h = 0
    for n in range(1, N + 1):
        for m in range(n + 1, N + 1):
            n_d += 1
            if bad_d is None and metric.distance(inst.x(m), inst.x(n)) != taus[n - 1]:
                bad_d = (m, n)
    for n in range(1, N - 1):
        for m in range(n + 1, N):
            n_h += 1
            h = hausdorff(metric, inst.image(m), inst.image(n))
            if bad_h is None and h != taus[n]:
                bad_h = (m, n)
            d = metric.distance(inst.x(m), inst.x(n))
            if bad_i is None and h != evaluate(inst.gauge, d) * d:
                bad_i = (m, n)

    def claim(bad, count, what):
        if bad is None:
            return Claim("PASS", {"pairs": count, "identity": what})
        return Claim("FAIL", {"pairs": count, "identity": what, "first_violation": list(bad)})

    return (claim(bad_d, n_d, "d(x_m,x_n) = tau_n, n < m <= N"),
            claim(bad_h, n_h, "H(Tx_m,Tx_n) = tau_{n+1}, n < m <= N-1"),
            claim(bad_i, n_h, "H(Tx_m,Tx_n) = alpha(d) d, n < m <= N-1"))


def nadler_witness(N: int, r, inst: ExampleInstance | None = None) -> Claim:
    """First n with tau_n < 1 - r, confirmed by computing H/d on the pair (x_{n+1}, x_n)."""
    inst = inst or build_example(N)
    threshold = 1 - r
    for n in range(1, N - 1):
        if inst.taus[n - 1] < threshold:
            break
    else:
        return Claim("INCONCLUSIVE", {"r": format_scalar(r),
                                      "reason": f"tau_n >= 1 - r for every n <= {N - 2}"})
    x, y = inst.x(n + 1), inst.x(n)
    ratio = hausdorff(inst.metric, inst.map.image(x), inst.map.image(y)) / inst.metric.distance(x, y)
    verdict = "PASS" if ratio > r else "FAIL"
    return Claim(verdict, {"r": format_scalar(r), "first_index": n,
                           "pair": [x.id, y.id], "ratio": format_scalar(ratio),
                           "ratio_equals_1_minus_tau_n": ratio == 1 - inst.taus[n - 1],
                           "invariant_tails_violated": f"X_k for every k <= {N - 2}"})


def verify_example(N: int, r=None, *, sweep_depth: int = DEFAULT_SWEEP_DEPTH,
                   eps_grid=DEFAULT_EPS_GRID, deltas=None) -> ExampleReport:
    """Check the example's claims exactly.

    The pairwise equality sweeps run at depth min(N, sweep_depth); the
    asymptotic checks (Nadler witness, class S, Mizoguchi-Takahashi) at N.
    """
    start = time.perf_counter()
    inst = build_example(N)
    M = min(N, sweep_depth)
    sweep_inst = inst if M == N else build_example(M)
    claims = {}
    a, b, c = _sweep(sweep_inst, CachedMetric(sweep_inst.metric))
    claims["a_distance_formula"] = a
    claims["b_hausdorff_formula"] = b
    claims["c_gauge_equality"] = c
    if r is None:
        claims["d_no_nadler_subset"] = Claim("SKIPPED", {"reason": "no r supplied"})
    else:
        claims["d_no_nadler_subset"] = nadler_witness(N, r, inst)
    g = check_geraghty_class(inst.gauge, inst.taus, eps_grid)
    bounded = all(s is None or s <= e for e, s in zip(g.epsilons, g.sups))
    g_details = {k: v for k, v in g.to_dict().items() if k != "verdict"}
    claims["e_class_S"] = Claim(g.verdict if bounded else "FAIL", {**g_details, "s_le_eps": bounded})
    mt = check_mizoguchi_takahashi(inst.gauge, Fraction(0), inst.taus, deltas)
    claims["f_mizoguchi_takahashi"] = Claim(mt.verdict, {
        "limsup_estimate": format_scalar(mt.limsup),
        "equals_1_minus_tau_N": mt.limsup == 1 - inst.taus[-1],
        "approx": float(mt.limsup)})
    return ExampleReport(N, M, claims, time.perf_counter() - start)


def run_example_orbit(N: int, k: int = 1):
    """Iterate the example from x_k with its own gauge; the orbit walks to the sentinel."""
    inst = build_example(N)
    if not 1 <= k <= N:
        raise ValueError(f"start index must be in 1..{N}")
    trace = iterate(inst.map, inst.metric, inst.gauge, inst.x(k), tol=0)
    return type(trace)(trace.steps, trace.outcome, trace.metric,
                       (f"terminates at truncation sentinel x{N}",))
