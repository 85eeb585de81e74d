"""Constructive fixed-point iteration for set-valued contractions.

Each step picks x_{n+1} in T(x_n) nearest to x_n.  From the second step on
that point must lie within beta(d_n) * d_n of x_n, where d_n = d(x_{n-1}, x_n)
and beta = (1 + alpha) / 2.  When the map satisfies
H(Tx, Ty) <= alpha(d(x, y)) d(x, y) along the orbit the bound always holds,
so a failed bound is reported as evidence against that condition rather than
raised.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Iterable

from mvfix.errors import BoundUnachievable, EmptySet
from mvfix.gauges import Gauge, beta_of, evaluate
from mvfix.metric import Point
from mvfix.numeric import Mode, format_scalar, leq

DEFAULT_MAX_ITER = 10_000


@dataclass(frozen=True)
class Step:
    n: int
    point: Point
    step_distance: object    # d(x_{n-1}, x_n); None at n = 0
    image_distance: object   # D(x_n, T x_n)
    beta_value: object       # beta(step_distance); None at n = 0


@dataclass(frozen=True)
class FixedPoint:
    point: Point
    certificate: object      # D(z, Tz)
    name = "FixedPoint"


@dataclass(frozen=True)
class MaxIterExceeded:
    max_iter: int
    name = "MaxIterExceeded"


@dataclass(frozen=True)
class BoundViolation:
    step: int                # index of the step whose selection failed
    distance: object         # D(x_{step-1}, T x_{step-1})
    bound: object
    name = "BoundViolation"


@dataclass(frozen=True)
class IterationTrace:
    steps: tuple
    outcome: object
    metric: object = field(repr=False, compare=False, default=None)
    notes: tuple = ()

    @property
    def n_steps(self) -> int:
        return len(self.steps) - 1

    @property
    def points(self) -> list:
        return [s.point for s in self.steps]

    @property
    def step_distances(self) -> list:
        return [s.step_distance for s in self.steps[1:]]

    def summary(self) -> str:
        out = self.outcome
        if isinstance(out, FixedPoint):
            text = f"FixedPoint {out.point.label()}, {self.n_steps} steps, certificate {format_scalar(out.certificate)}"
        elif isinstance(out, MaxIterExceeded):
            text = f"MaxIterExceeded after {out.max_iter} steps"
        else:
            text = (f"BoundViolation at step {out.step}: distance {format_scalar(out.distance)}"
                    f" > bound {format_scalar(out.bound)}")
        if self.notes:
            text += " [" + "; ".join(self.notes) + "]"
        return text

    def write_csv(self, fh) -> None:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["n", "point_id", "step_distance", "image_distance", "beta_value"])
        for s in self.steps:
            w.writerow([s.n, s.point.label(),
                        "" if s.step_distance is None else format_scalar(s.step_distance),
                        format_scalar(s.image_distance),
                        "" if s.beta_value is None else format_scalar(s.beta_value)])

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()


def _nearest(metric, current: Point, image) -> tuple[Point, object]:
    best = best_d = None
    for y in image:   # canonical order, so the first minimiser wins ties
        d = metric.distance(current, y)
        if best_d is None or d < best_d:
            best, best_d = y, d
    if best is None:
        raise EmptySet("empty image")
    return best, best_d


def select_next(metric, current: Point, image, bound=None) -> Point:
    """Nearest point of ``image`` to ``current``; raises BoundUnachievable past ``bound``."""
    y, d = _nearest(metric, current, image)
    if bound is not None and not leq(d, bound):
        raise BoundUnachievable(d, bound)
    return y


def iterate(tmap, metric, gauge: Gauge, x0: Point, tol=None,
            max_iter: int = DEFAULT_MAX_ITER) -> IterationTrace:
    """Run the orbit x_{n+1} = select_next(x_n, T x_n) until D(x_n, T x_n) <= tol."""
    if tol is None:
        tol = 0 if x0.mode is Mode.EXACT else 1e-12
    if x0.mode is Mode.FLOAT and not tol > 0:
        raise ValueError("float mode needs tol > 0")
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    beta = beta_of(gauge)
    steps = []
    x, prev_d, b_val = x0, None, None
    n = 0
    while True:
        image = tmap.image(x)
        nxt, img_d = _nearest(metric, x, image)
        steps.append(Step(n, x, prev_d, img_d, b_val))
        if img_d <= tol:
            outcome = FixedPoint(x, img_d)
            break
        if n >= max_iter:
            outcome = MaxIterExceeded(max_iter)
            break
        if prev_d is not None:
            bound = b_val * prev_d
            if not leq(img_d, bound):
                outcome = BoundViolation(n + 1, img_d, bound)
                break
        prev_d = img_d
        b_val = evaluate(beta, img_d)
        x = nxt
        n += 1
    return IterationTrace(tuple(steps), outcome, metric)


@dataclass(frozen=True)
class OrbitDiagnostics:
    contraction_violation: int | None = None   # first n with d_{n+1} > beta(d_n) d_n
    monotonicity_violation: int | None = None  # first n with d_{n+1} >= d_n > 0
    cauchy_violation: tuple | None = None       # first (n, m) breaking the Cauchy estimate
    pairs_checked: int = 0

    @property
    def ok(self) -> bool:
        return (self.contraction_violation is None and self.monotonicity_violation is None
                and self.cauchy_violation is None)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "contraction_violation": self.contraction_violation,
                "monotonicity_violation": self.monotonicity_violation,
                "cauchy_violation": list(self.cauchy_violation) if self.cauchy_violation else None,
                "pairs_checked": self.pairs_checked}


def verify_orbit_conditions(trace: IterationTrace, gauge: Gauge, metric=None) -> OrbitDiagnostics:
    """Re-check a trace against the orbit inequalities.

    * d(x_n, x_{n+1}) <= beta(d(x_{n-1}, x_n)) d(x_{n-1}, x_n) for every step,
    * step distances strictly decrease while positive,
    * for all recorded n < m:
      (1 - beta(d(x_n, x_m))) d(x_n, x_m) <= D(x_n, T x_n) + D(x_m, T x_m).

    D(x_k, T x_k) equals d(x_k, x_{k+1}) for every step but the last.
    """
    metric = metric or trace.metric
    if metric is None:
        raise ValueError("a metric is needed to check the Cauchy estimate")
    beta = beta_of(gauge)
    steps = trace.steps
    if len(steps) == 0:
        raise EmptySet("empty trace")
    d = [s.step_distance for s in steps[1:]]
    contraction = monotone = None
    for i in range(len(d) - 1):
        if not leq(d[i + 1], evaluate(beta, d[i]) * d[i]) and contraction is None:
            contraction = i + 2
        if d[i] > 0 and not d[i + 1] < d[i] and monotone is None:
            monotone = i + 2
    cauchy = None
    checked = 0
    for i in range(len(steps)):
        for j in range(i + 1, len(steps)):
            dist = metric.distance(steps[i].point, steps[j].point)
            checked += 1
            lhs = (1 - evaluate(beta, dist)) * dist
            if not leq(lhs, steps[i].image_distance + steps[j].image_distance):
                cauchy = (steps[i].n, steps[j].n)
                break
        if cauchy:
            break
    return OrbitDiagnostics(contraction, monotone, cauchy, checked)


def all_pairs(points: Iterable[Point]) -> list[tuple[Point, Point]]:
    pts = list(points)
    return [(pts[i], pts[j]) for i in range(len(pts)) for j in range(i + 1, len(pts))]
