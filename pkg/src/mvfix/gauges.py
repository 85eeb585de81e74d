"""Gauge functions alpha: [0, inf) -> [0, 1) and the contraction-condition checkers.

The class-S and Mizoguchi-Takahashi checks are verdicts over explicit probe
sets: they can falsify or corroborate a condition that quantifies over
sequences, never prove it.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from mvfix.errors import (CodomainViolation, EmptyProbeSet, ModeMismatch, NegativeArgument,
                          NoProbesRightOfT0, ZeroDistancePair)
from mvfix.hausdorff import hausdorff
from mvfix.numeric import float_tolerance, format_scalar


def _in_codomain(v) -> bool:
    return 0 <= v < 1


def _for_argument(value, t):
    """Express a gauge constant in the numeric mode of the argument t."""
    if isinstance(t, float):
        return float(value)
    if isinstance(value, float):
        raise ModeMismatch("float-valued gauge evaluated at an exact argument")
    return Fraction(value) if isinstance(value, int) else value


class Gauge:
    kind: str

    def __call__(self, t):
        return evaluate(self, t)

    def _value(self, t):
        raise NotImplementedError

    def to_spec(self) -> dict:
        raise NotImplementedError


class Constant(Gauge):
    kind = "constant"

    def __init__(self, value):
        if not _in_codomain(value):
            raise CodomainViolation(f"constant gauge {value} outside [0, 1)")
        self.value = Fraction(value) if isinstance(value, int) else value

    def _value(self, t):
        return _for_argument(self.value, t)

    def to_spec(self):
        return {"kind": "constant", "value": format_scalar(self.value)}

    def __eq__(self, other):
        return isinstance(other, Constant) and self.value == other.value

    def __hash__(self):
        return hash(("constant", self.value))

    def __repr__(self):
        return f"Constant({self.value})"


class Tabulated(Gauge):
    """alpha(t) = table[t] on a finite key set and ``default`` elsewhere.

    Keys match exactly for exact arguments and within the global tolerance for
    float arguments.
    """

    kind = "tabulated"

    def __init__(self, entries: Iterable[tuple], default=Fraction(0)):
        pairs = sorted(entries, key=lambda kv: kv[0])
        for k, v in pairs:
            if k < 0:
                raise NegativeArgument(f"tabulated key {k} is negative")
            if not _in_codomain(v):
                raise CodomainViolation(f"tabulated value {v} at {k} outside [0, 1)")
        for (k1, _), (k2, _) in zip(pairs, pairs[1:]):
            if k1 == k2:
                raise ValueError(f"duplicate tabulated key {k1}")
        if not _in_codomain(default):
            raise CodomainViolation(f"default value {default} outside [0, 1)")
        self.keys = [k for k, _ in pairs]
        self.values = [v for _, v in pairs]
        self.default = default
        self._float_keys = None

    def _value(self, t):
        if isinstance(t, float):
            if self._float_keys is None:
                self._float_keys = [float(k) for k in self.keys]
            keys = self._float_keys
            i = bisect.bisect_left(keys, t)
            tol = float_tolerance()
            for j in (i - 1, i):
                if 0 <= j < len(keys) and abs(keys[j] - t) <= tol:
                    return _for_argument(self.values[j], t)
            return _for_argument(self.default, t)
        i = bisect.bisect_left(self.keys, t)
        if i < len(self.keys) and self.keys[i] == t:
            return _for_argument(self.values[i], t)
        return _for_argument(self.default, t)

    def to_spec(self):
        return {"kind": "tabulated",
                "entries": [[format_scalar(k), format_scalar(v)] for k, v in zip(self.keys, self.values)],
                "default": format_scalar(self.default)}

    def __eq__(self, other):
        return (isinstance(other, Tabulated) and self.keys == other.keys
                and self.values == other.values and self.default == other.default)

    def __hash__(self):
        return hash(("tabulated", len(self.keys)))

    def __repr__(self):
        return f"Tabulated({len(self.keys)} keys, default={self.default})"


class Rule(Gauge):
    """A registered closed-form gauge."""

    kind = "rule"

    def __init__(self, name: str, params: dict | None = None):
        if name not in RULES:
            raise ValueError(f"unknown gauge rule {name!r}; known: {sorted(RULES)}")
        self.name = name
        self.params = dict(params or {})
        self._fn = RULES[name](self.params)

    def _value(self, t):
        return self._fn(t)

    def to_spec(self):
        params = {k: (v.to_spec() if isinstance(v, Gauge) else format_scalar(v))
                  for k, v in self.params.items()}
        return {"kind": "rule", "name": self.name, "params": params}

    def __eq__(self, other):
        return isinstance(other, Rule) and (self.name, self.params) == (other.name, other.params)

    def __hash__(self):
        return hash(("rule", self.name))

    def __repr__(self):
        return f"Rule({self.name}, {self.params})"


def _ratio(params):
    c = params.get("c", Fraction(1))

    def fn(t):
        return t / (_for_argument(c, t) + t)
    return fn


def _log_ratio(params):
    def fn(t):
        t = float(t)
        return 0.0 if t == 0 else math.log1p(t) / t
    return fn


def _scaled_exp(params):
    c = params.get("c", 0.5)

    def fn(t):
        return float(c) * math.exp(-float(t))
    return fn


def _beta_rule(params):
    inner = params["of"]

    def fn(t):
        return (1 + evaluate(inner, t)) / 2
    return fn


# name -> factory(params) -> t -> alpha(t)
RULES: dict[str, Callable[[dict], Callable]] = {
    "ratio": _ratio,            # t / (c + t)
    "log_ratio": _log_ratio,    # log(1 + t) / t, 0 at t = 0
    "scaled_exp": _scaled_exp,  # c * exp(-t)
    "beta": _beta_rule,         # (1 + alpha(t)) / 2 for alpha = params["of"]
}


def evaluate(g: Gauge, t):
    if t < 0:
        raise NegativeArgument(f"gauge argument {t} is negative")
    v = g._value(t)
    if not _in_codomain(v):
        raise CodomainViolation(f"{g!r} evaluates to {v} at {t}, outside [0, 1)")
    return v


def beta_of(g: Gauge) -> Gauge:
    """The gauge t -> (1 + alpha(t)) / 2, which lies strictly between alpha and 1."""
    if isinstance(g, Constant):
        return Constant((1 + g.value) / 2)
    if isinstance(g, Tabulated):
        return Tabulated([(k, (1 + v) / 2) for k, v in zip(g.keys, g.values)], (1 + g.default) / 2)
    return Rule("beta", {"of": g})


# -- class S -----------------------------------------------------------------------


@dataclass(frozen=True)
class GeraghtyReport:
    epsilons: tuple
    sups: tuple          # s(eps) per epsilon, None when no probe has alpha >= 1 - eps
    verdict: str         # PASS | FAIL | INCONCLUSIVE
    reason: str = ""

    def to_dict(self) -> dict:
        return {"epsilons": [format_scalar(e) for e in self.epsilons],
                "sups": [None if s is None else format_scalar(s) for s in self.sups],
                "verdict": self.verdict, "reason": self.reason}


def check_geraghty_class(g: Gauge, probes: Sequence, eps_grid: Sequence, *,
                         slack=1) -> GeraghtyReport:
    """Probe-scale check of "alpha(t_n) -> 1 implies t_n -> 0".

    For each eps, s(eps) = max{t in probes : alpha(t) >= 1 - eps}.  PASS when no
    probe comes near 1, or when the deepest eps with a witness has
    s(eps) <= slack * eps and the final s is absent or within that bound too.
    FAIL when s(eps) never decreases across two or more witnessed levels while
    staying above slack * eps.  Otherwise INCONCLUSIVE.
    """
    probes = list(probes)
    if not probes:
        raise EmptyProbeSet("no probes")
    if any(t < 0 for t in probes):
        raise NegativeArgument("probes must be nonnegative")
    eps_grid = list(eps_grid)
    if not eps_grid or any(not 0 < e < 1 for e in eps_grid):
        raise ValueError("eps grid must be nonempty and inside (0, 1)")
    if any(b >= a for a, b in zip(eps_grid, eps_grid[1:])):
        raise ValueError("eps grid must be strictly decreasing")

    values = [(t, evaluate(g, t)) for t in probes]
    sups = []
    for eps in eps_grid:
        level = 1 - eps
        hits = [t for t, a in values if a >= _for_argument(level, a)]
        sups.append(max(hits) if hits else None)

    witnessed = [(e, s) for e, s in zip(eps_grid, sups) if s is not None]
    if not witnessed:
        return GeraghtyReport(tuple(eps_grid), tuple(sups), "PASS", "no probe reaches 1 - eps (vacuous)")
    last_eps, last_s = witnessed[-1]
    bound = slack * last_eps
    if last_s <= _for_argument(bound, last_s):
        return GeraghtyReport(tuple(eps_grid), tuple(sups), "PASS",
                              f"s(eps) <= {format_scalar(slack)}*eps at the deepest witnessed eps")
    first_s = witnessed[0][1]
    if len(witnessed) >= 2 and last_s >= first_s:
        return GeraghtyReport(tuple(eps_grid), tuple(sups), "FAIL",
                              f"s(eps) stays at {format_scalar(last_s)} as eps shrinks")
    return GeraghtyReport(tuple(eps_grid), tuple(sups), "INCONCLUSIVE",
                          "s(eps) decreases but not below eps on this grid")


# -- Mizoguchi-Takahashi -------------------------------------------------------------


@dataclass(frozen=True)
class MTReport:
    t0: object
    estimates: tuple     # (delta, sup alpha on (t0, t0 + delta]) with None for empty windows
    limsup: object       # estimate at the smallest nonempty window
    verdict: str         # PASS-MT | FAIL-MT

    def to_dict(self) -> dict:
        return {"t0": format_scalar(self.t0),
                "estimates": [[format_scalar(d), None if s is None else format_scalar(s)]
                              for d, s in self.estimates],
                "limsup": format_scalar(self.limsup), "verdict": self.verdict}


def default_deltas(n: int = 30):
    return [Fraction(1, 2 ** k) for k in range(0, n + 1)]


def check_mizoguchi_takahashi(g: Gauge, t0, probes: Sequence, deltas: Sequence | None = None,
                              *, margin=Fraction(1, 100)) -> MTReport:
    """Estimate limsup_{s -> t0+} alpha(s) from the probes right of t0.

    FAIL-MT when the estimate at the narrowest nonempty window is within
    ``margin`` of 1, PASS-MT otherwise.
    """
    if t0 < 0:
        raise NegativeArgument("t0 must be nonnegative")
    deltas = sorted(default_deltas() if deltas is None else deltas, reverse=True)
    right = [(s, evaluate(g, s)) for s in probes if s > t0]
    if not right or not any(s <= t0 + deltas[0] for s, _ in right):
        raise NoProbesRightOfT0(f"no probes in (t0, t0 + {format_scalar(deltas[0])}]")
    estimates = []
    limsup = None
    for delta in deltas:
        window = [a for s, a in right if s <= t0 + delta]
        est = max(window) if window else None
        estimates.append((delta, est))
        if est is not None:
            limsup = est
    verdict = "FAIL-MT" if limsup >= _for_argument(1 - margin, limsup) else "PASS-MT"
    return MTReport(t0, tuple(estimates), limsup, verdict)


# -- Nadler constant -----------------------------------------------------------------


@dataclass(frozen=True)
class NadlerEstimate:
    ratio: object
    witness: tuple | None    # (x, y) attaining the ratio

    def to_dict(self) -> dict:
        return {"ratio": format_scalar(self.ratio),
                "witness": None if self.witness is None else [p.label() for p in self.witness]}


def estimate_nadler_constant(tmap, metric, pairs: Iterable[tuple]) -> NadlerEstimate:
    """max over pairs of H(Tx, Ty) / d(x, y), with an argmax witness."""
    best = None
    witness = None
    for x, y in pairs:
        d = metric.distance(x, y)
        if not d > 0:
            raise ZeroDistancePair(f"d({x.label()}, {y.label()}) = 0")
        ratio = hausdorff(metric, tmap.image(x), tmap.image(y)) / d
        if best is None or ratio > best:
            best, witness = ratio, (x, y)
    if best is None:
        raise EmptyProbeSet("no pairs given")
    return NadlerEstimate(best, witness)
