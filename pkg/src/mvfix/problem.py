"""JSON problem files shared by every CLI subcommand.

Layout::

    {
      "mode": "exact" | "float",
      "metric": "euclidean" | "sup" | "table",
      "points": [{"id": "a", "coords": [...]} | {"id": "b", "sparse": {"3": "1/4"}} | {"id": "c"}],
      "table": [[...], ...],                     # row-major, in "points" order (table metric)
      "map": {"table": {"a": ["b"], ...}} | {"rule": "scale", "params": {...}},
      "gauge": {"kind": "constant" | "tabulated" | "rule", ...},
      "solver": {"x0": "a", "tol": "0", "max_iter": 10000},
      "sets": {"A": {"set": ["a", "b"]}, "U": {"set": [{"set": ["a"]}, {"set": ["b"]}]}}
    }

Exact scalars are strings such as "3/16" or "1 - tau(12)"; they round-trip
without loss.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from mvfix.corpus import build_example
from mvfix.errors import MvfixError, ProblemFileError
from mvfix.gauges import Constant, Gauge, Rule, Tabulated
from mvfix.hausdorff import FiniteSet
from mvfix.maps import RULES as MAP_RULES
from mvfix.maps import TableMap, rule_map
from mvfix.metric import Euclidean, ExplicitTable, Point, SupNorm
from mvfix.numeric import Mode, format_scalar, parse_scalar

_METRICS = {"euclidean": Euclidean, "sup": SupNorm}


@dataclass
class Problem:
    mode: Mode
    metric: object
    points: dict                       # id -> Point, in file order
    map: object = None
    map_spec: dict | None = None
    gauge: Gauge | None = None
    x0: str | None = None
    tol: object = None
    max_iter: int | None = None
    sets: dict = field(default_factory=dict)   # name -> FiniteSet
    set_specs: dict = field(default_factory=dict)

    def point(self, pid: str) -> Point:
        try:
            return self.points[pid]
        except KeyError:
            raise ProblemFileError("points", f"unknown point id {pid!r}") from None

    def set_of(self, ids) -> FiniteSet:
        return FiniteSet(self.point(i) for i in ids)


def _scalar(raw, mode, where):
    try:
        return parse_scalar(raw, mode)
    except (ValueError, ZeroDivisionError) as exc:
        raise ProblemFileError(where, str(exc)) from None


def _require(doc, key, where=None):
    if key not in doc:
        raise ProblemFileError(where or key, "missing")
    return doc[key]


def parse_gauge(spec, mode: Mode, where: str = "gauge") -> Gauge:
    if not isinstance(spec, dict):
        raise ProblemFileError(where, "expected an object")
    kind = spec.get("kind")
    try:
        if kind == "constant":
            return Constant(_scalar(_require(spec, "value", f"{where}.value"), mode, f"{where}.value"))
        if kind == "tabulated":
            entries = _require(spec, "entries", f"{where}.entries")
            pairs = [(_scalar(k, mode, f"{where}.entries"), _scalar(v, mode, f"{where}.entries"))
                     for k, v in entries]
            default = _scalar(spec.get("default", 0), mode, f"{where}.default")
            return Tabulated(pairs, default)
        if kind == "rule":
            name = _require(spec, "name", f"{where}.name")
            params = {}
            for k, v in spec.get("params", {}).items():
                if isinstance(v, dict):
                    params[k] = parse_gauge(v, mode, f"{where}.params.{k}")
                else:
                    params[k] = _scalar(v, mode, f"{where}.params.{k}")
            return Rule(name, params)
    except ProblemFileError:
        raise
    except (MvfixError, ValueError, TypeError) as exc:
        raise ProblemFileError(where, str(exc)) from None
    raise ProblemFileError(f"{where}.kind", f"expected constant|tabulated|rule, got {kind!r}")


def _parse_point(entry, mode, i, metric_name):
    where = f"points[{i}]"
    if not isinstance(entry, dict) or "id" not in entry:
        raise ProblemFileError(where, "each point needs an id")
    pid = str(entry["id"])
    try:
        if "coords" in entry:
            coords = [_scalar(c, mode, f"{where}.coords") for c in entry["coords"]]
            return Point.dense(coords, id=pid, mode=mode)
        if "sparse" in entry:
            items = {int(k): _scalar(v, mode, f"{where}.sparse") for k, v in entry["sparse"].items()}
            return Point.sparse(items, id=pid, mode=mode)
    except ProblemFileError:
        raise
    except (MvfixError, ValueError, TypeError) as exc:
        raise ProblemFileError(where, str(exc)) from None
    if metric_name != "table":
        raise ProblemFileError(where, "needs coords or sparse")
    return Point.labelled(pid, mode)


def _parse_set(spec, problem, where):
    if not isinstance(spec, dict) or "set" not in spec:
        raise ProblemFileError(where, 'expected {"set": [...]}')
    items = spec["set"]
    if not isinstance(items, list) or not items:
        raise ProblemFileError(where, "a set needs at least one element")
    elems = []
    for j, item in enumerate(items):
        if isinstance(item, dict):
            elems.append(_parse_set(item, problem, f"{where}.set[{j}]"))
        else:
            if str(item) not in problem.points:
                raise ProblemFileError(f"{where}.set[{j}]", f"unknown point id {item!r}")
            elems.append(problem.points[str(item)])
    try:
        return FiniteSet(elems)
    except (MvfixError, TypeError) as exc:
        raise ProblemFileError(where, str(exc)) from None


def load_problem(source) -> Problem:
    """Parse a problem from a path, a JSON string, or an already-decoded dict."""
    if isinstance(source, dict):
        doc = source
    else:
        text = Path(source).read_text() if not str(source).lstrip().startswith("{") else str(source)
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ProblemFileError("file", f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ProblemFileError("file", "top level must be an object")

    try:
        mode = Mode(doc.get("mode", "float"))
    except ValueError:
        raise ProblemFileError("mode", f"expected exact|float, got {doc.get('mode')!r}") from None
    metric_name = _require(doc, "metric")
    if metric_name not in ("euclidean", "sup", "table"):
        raise ProblemFileError("metric", f"expected euclidean|sup|table, got {metric_name!r}")
    raw_points = _require(doc, "points")
    if not isinstance(raw_points, list) or not raw_points:
        raise ProblemFileError("points", "expected a nonempty list")
    points = {}
    for i, entry in enumerate(raw_points):
        p = _parse_point(entry, mode, i, metric_name)
        if p.id in points:
            raise ProblemFileError(f"points[{i}]", f"duplicate id {p.id!r}")
        points[p.id] = p

    if metric_name == "table":
        rows = _require(doc, "table")
        try:
            rows = [[_scalar(v, mode, "table") for v in row] for row in rows]
            metric = ExplicitTable(list(points), rows, mode)
        except ProblemFileError:
            raise
        except (MvfixError, TypeError) as exc:
            raise ProblemFileError("table", str(exc)) from None
    else:
        metric = _METRICS[metric_name]()

    problem = Problem(mode, metric, points)

    if "map" in doc:
        spec = doc["map"]
        problem.map_spec = spec
        if not isinstance(spec, dict):
            raise ProblemFileError("map", "expected an object")
        if "table" in spec:
            table = {}
            for pid, img in spec["table"].items():
                where = f"map.table.{pid}"
                if pid not in points:
                    raise ProblemFileError(where, f"unknown point id {pid!r}")
                if not isinstance(img, list) or not img:
                    raise ProblemFileError(where, "image must be a nonempty list of ids")
                for q in img:
                    if str(q) not in points:
                        raise ProblemFileError(where, f"unknown point id {q!r}")
                table[points[pid]] = [points[str(q)] for q in img]
            domain = spec.get("domain")
            expected = set(domain) if domain is not None else set(points)
            missing = sorted(expected - set(spec["table"]))
            if missing:
                raise ProblemFileError("map.table", f"map is not total; missing {missing}")
            try:
                problem.map = TableMap(table)
            except MvfixError as exc:
                raise ProblemFileError("map.table", str(exc)) from None
        elif "rule" in spec:
            name = spec["rule"]
            if name not in MAP_RULES:
                raise ProblemFileError("map.rule", f"unknown rule {name!r}; known: {sorted(MAP_RULES)}")
            params = {}
            for k, v in spec.get("params", {}).items():
                if isinstance(v, list):
                    params[k] = [_scalar(x, mode, f"map.params.{k}") for x in v]
                else:
                    params[k] = _scalar(v, mode, f"map.params.{k}")
            try:
                problem.map = rule_map(name, params)
            except (KeyError, ValueError) as exc:
                raise ProblemFileError("map.params", f"bad parameters: {exc}") from None
        else:
            raise ProblemFileError("map", 'expected "table" or "rule"')

    if "gauge" in doc:
        problem.gauge = parse_gauge(doc["gauge"], mode)

    solver = doc.get("solver", {})
    if not isinstance(solver, dict):
        raise ProblemFileError("solver", "expected an object")
    if "x0" in solver:
        if str(solver["x0"]) not in points:
            raise ProblemFileError("solver.x0", f"unknown point id {solver['x0']!r}")
        problem.x0 = str(solver["x0"])
    if "tol" in solver:
        problem.tol = _scalar(solver["tol"], mode, "solver.tol")
    if "max_iter" in solver:
        if not isinstance(solver["max_iter"], int) or solver["max_iter"] < 0:
            raise ProblemFileError("solver.max_iter", "expected a nonnegative integer")
        problem.max_iter = solver["max_iter"]

    for name, spec in doc.get("sets", {}).items():
        problem.sets[name] = _parse_set(spec, problem, f"sets.{name}")
        problem.set_specs[name] = spec
    return problem


def _set_spec(s: FiniteSet) -> dict:
    return {"set": [(_set_spec(e) if isinstance(e, FiniteSet) else e.id) for e in s]}


def dump_problem(problem: Problem) -> dict:
    """Inverse of ``load_problem``."""
    metric_name = problem.metric.name
    points = []
    for pid, p in problem.points.items():
        if p.kind == "dense":
            points.append({"id": pid, "coords": [_out(v, problem.mode) for v in p.data]})
        elif p.kind == "sparse":
            points.append({"id": pid, "sparse": {str(i): _out(v, problem.mode) for i, v in p.data}})
        else:
            points.append({"id": pid})
    doc = {"mode": problem.mode.value, "metric": metric_name, "points": points}
    if metric_name == "table":
        doc["table"] = [[_out(v, problem.mode) for v in row] for row in problem.metric.rows]
    if problem.map is not None:
        if isinstance(problem.map, TableMap):
            doc["map"] = {"table": {x.id: [y.id for y in img] for x, img in problem.map.table.items()}}
        else:
            doc["map"] = {"rule": problem.map.name,
                          "params": {k: ([_out(x, problem.mode) for x in v] if isinstance(v, list)
                                         else _out(v, problem.mode)) for k, v in problem.map.params.items()}}
    if problem.gauge is not None:
        doc["gauge"] = problem.gauge.to_spec()
    solver = {}
    if problem.x0 is not None:
        solver["x0"] = problem.x0
    if problem.tol is not None:
        solver["tol"] = _out(problem.tol, problem.mode)
    if problem.max_iter is not None:
        solver["max_iter"] = problem.max_iter
    if solver:
        doc["solver"] = solver
    if problem.sets:
        doc["sets"] = {name: _set_spec(s) for name, s in problem.sets.items()}
    return doc


def _out(v, mode):
    return v if mode is Mode.FLOAT else format_scalar(v)


def example_problem(N: int, x0: int = 1) -> Problem:
    """The depth-N example as a problem file, with named sets Tx1..TxN."""
    inst = build_example(N)
    points = {p.id: p for p in inst.points}
    problem = Problem(Mode.EXACT, inst.metric, points, map=inst.map, gauge=inst.gauge,
                      x0=f"x{x0}", tol=0)
    problem.sets = {f"T{p.id}": inst.map.image(p) for p in inst.points}
    return problem
