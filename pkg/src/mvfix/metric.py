"""Points, ground metrics, and point-to-set distance."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from mvfix.errors import EmptySet, IncompatiblePoints, InvalidMetricTable, ModeMismatch
from mvfix.numeric import Mode, common_mode, exact_sqrt, float_tolerance, to_mode

_KIND_RANK = {"dense": 0, "sparse": 1, "label": 2}


class Point:
    """An element of a metric space.

    Three shapes are supported: a dense coordinate vector, a finitely supported
    sparse vector (index -> value, zeros dropped), or a bare label for points
    of an explicit distance table.  Equality and ordering use the canonical
    coordinates only; ``id`` is carried along for reporting.
    """

    __slots__ = ("kind", "data", "mode", "id", "_hash")

    def __init__(self, kind: str, data: tuple, mode: Mode, id: str | None = None):
        self.kind = kind
        self.data = data
        self.mode = mode
        self.id = id
        self._hash = None

    @classmethod
    def dense(cls, coords: Iterable, id: str | None = None, mode: Mode | None = None) -> "Point":
        coords = list(coords)
        if not coords:
            raise ValueError("a dense point needs at least one coordinate")
        mode = mode or common_mode(coords)
        return cls("dense", tuple(to_mode(c, mode) for c in coords), mode, id)

    @classmethod
    def sparse(cls, entries: Mapping[int, object], id: str | None = None,
               mode: Mode | None = None) -> "Point":
        items = sorted((int(i), v) for i, v in entries.items())
        if any(i < 0 for i, _ in items):
            raise ValueError("sparse indices must be nonnegative")
        if len({i for i, _ in items}) != len(items):
            raise ValueError("duplicate sparse index")
        mode = mode or common_mode(v for _, v in items) or Mode.EXACT
        items = tuple((i, to_mode(v, mode)) for i, v in items if v != 0)
        return cls("sparse", items, mode, id)

    @classmethod
    def labelled(cls, label: str, mode: Mode = Mode.EXACT) -> "Point":
        return cls("label", (str(label),), mode, str(label))

    @property
    def coords(self) -> tuple:
        if self.kind != "dense":
            raise AttributeError(f"{self.kind} point has no dense coordinates")
        return self.data

    @property
    def dimension(self) -> int | None:
        return len(self.data) if self.kind == "dense" else None

    def sparse_items(self) -> tuple:
        """(index, value) pairs of the nonzero coordinates; dense index i maps to i."""
        if self.kind == "sparse":
            return self.data
        if self.kind == "dense":
            return tuple((i, v) for i, v in enumerate(self.data) if v != 0)
        raise IncompatiblePoints("label points have no coordinates")

    def sort_key(self) -> tuple:
        return (_KIND_RANK[self.kind], self.data)

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        return self.kind == other.kind and self.mode is other.mode and self.data == other.data

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.kind, self.data))
        return self._hash

    def label(self) -> str:
        if self.id is not None:
            return self.id
        if self.kind == "sparse":
            return "{" + ", ".join(f"{i}: {v}" for i, v in self.data) + "}"
        return "(" + ", ".join(str(v) for v in self.data) + ")"

    def __repr__(self):
        tag = f"{self.id}=" if self.id else ""
        return f"Point({tag}{self.kind}:{self.label() if self.kind != 'label' else ''})"


def _check_modes(p: Point, q: Point) -> None:
    if p.mode is not q.mode:
        raise IncompatiblePoints(f"numeric modes differ: {p.mode.value} vs {q.mode.value}")


class Euclidean:
    name = "euclidean"

    def distance(self, p: Point, q: Point):
        _check_modes(p, q)
        if p.kind != "dense" or q.kind != "dense":
            raise IncompatiblePoints("the Euclidean metric needs dense points")
        if len(p.data) != len(q.data):
            raise IncompatiblePoints(f"dimensions differ: {len(p.data)} vs {len(q.data)}")
        if p.mode is Mode.FLOAT:
            return math.dist(p.data, q.data)
        return exact_sqrt(self.squared(p, q))

    @staticmethod
    def squared(p: Point, q: Point):
        return sum(((a - b) * (a - b) for a, b in zip(p.data, q.data)), Fraction(0)
                   if p.mode is Mode.EXACT else 0.0)

    def __eq__(self, other):
        return type(other) is Euclidean

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return "Euclidean()"


class SupNorm:
    """Supremum norm on dense vectors and finitely supported sequences.

    Dense and sparse points may be mixed; a dense vector is read as the
    sequence supported on indices 0..d-1.
    """

    name = "sup"

    def distance(self, p: Point, q: Point):
        _check_modes(p, q)
        if p.kind == "dense" and q.kind == "dense":
            if len(p.data) != len(q.data):
                raise IncompatiblePoints(f"dimensions differ: {len(p.data)} vs {len(q.data)}")
            return max(abs(a - b) for a, b in zip(p.data, q.data))
        a, b = p.sparse_items(), q.sparse_items()
        zero = Fraction(0) if p.mode is Mode.EXACT else 0.0
        best = zero
        i = j = 0
        # merge over the union of supports
        while i < len(a) or j < len(b):
            if j == len(b) or (i < len(a) and a[i][0] < b[j][0]):
                diff = abs(a[i][1])
                i += 1
            elif i == len(a) or b[j][0] < a[i][0]:
                diff = abs(b[j][1])
                j += 1
            else:
                diff = abs(a[i][1] - b[j][1])
                i += 1
                j += 1
            if diff > best:
                best = diff
        return best

    def __eq__(self, other):
        return type(other) is SupNorm

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return "SupNorm()"


@dataclass(frozen=True)
class TableReport:
    ok: bool
    kind: str | None = None
    labels: tuple = ()
    message: str = "ok"


def validate_metric_table(labels: Sequence[str], rows: Sequence[Sequence]) -> TableReport:
    """Check symmetry, zero diagonal, positivity off the diagonal and the triangle inequality.

    Returns the first violation found; triangle violations are reported as
    (x, y, z) with d(x, z) > d(x, y) + d(y, z).
    """
    n = len(labels)
    if len(set(labels)) != n:
        return TableReport(False, "labels", tuple(labels), "duplicate labels")
    if len(rows) != n or any(len(r) != n for r in rows):
        return TableReport(False, "shape", (), f"table must be {n}x{n}")
    values = [v for r in rows for v in r]
    try:
        common_mode(values)
    except ModeMismatch:
        return TableReport(False, "mode", (), "exact and float entries mixed")
    tol = float_tolerance() if any(isinstance(v, float) for v in values) else 0
    for i in range(n):
        if abs(rows[i][i]) > tol:
            return TableReport(False, "diagonal", (labels[i],), f"d({labels[i]},{labels[i]}) != 0")
    for i in range(n):
        for j in range(i + 1, n):
            if abs(rows[i][j] - rows[j][i]) > tol:
                return TableReport(False, "symmetry", (labels[i], labels[j]),
                                   f"d({labels[i]},{labels[j]}) != d({labels[j]},{labels[i]})")
            if rows[i][j] <= tol:
                return TableReport(False, "positivity", (labels[i], labels[j]),
                                   f"d({labels[i]},{labels[j]}) must be > 0")
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if rows[x][z] > rows[x][y] + rows[y][z] + tol:
                    return TableReport(False, "triangle", (labels[x], labels[y], labels[z]),
                                       f"d({labels[x]},{labels[z]}) > d({labels[x]},{labels[y]})"
                                       f" + d({labels[y]},{labels[z]})")
    return TableReport(True)


class ExplicitTable:
    """Finite metric space given by its full distance table, validated on construction."""

    name = "table"

    def __init__(self, labels: Sequence[str], rows: Sequence[Sequence], mode: Mode | None = None):
        labels = [str(l) for l in labels]
        flat = [v for r in rows for v in r]
        self.mode = mode or common_mode(flat) or Mode.EXACT
        rows = [[to_mode(v, self.mode) for v in r] for r in rows]
        report = validate_metric_table(labels, rows)
        if not report.ok:
            raise InvalidMetricTable(report)
        self.labels = tuple(labels)
        self.rows = tuple(tuple(r) for r in rows)
        self._index = {l: i for i, l in enumerate(labels)}

    def point(self, label: str) -> Point:
        if label not in self._index:
            raise IncompatiblePoints(f"unknown label {label!r}")
        return Point.labelled(label, self.mode)

    def points(self) -> list[Point]:
        return [self.point(l) for l in self.labels]

    def distance(self, p: Point, q: Point):
        _check_modes(p, q)
        if p.mode is not self.mode:
            raise IncompatiblePoints("point mode differs from the table's")
        if p.kind != "label" or q.kind != "label":
            raise IncompatiblePoints("table metrics need label points")
        try:
            return self.rows[self._index[p.data[0]]][self._index[q.data[0]]]
        except KeyError as exc:
            raise IncompatiblePoints(f"label {exc.args[0]!r} not in the table") from None

    def __eq__(self, other):
        return isinstance(other, ExplicitTable) and (self.labels, self.rows) == (other.labels, other.rows)

    def __hash__(self):
        return hash((self.labels, self.rows))

    def __repr__(self):
        return f"ExplicitTable({list(self.labels)})"


class CachedMetric:
    """Memoising wrapper; distances are symmetric so (p, q) and (q, p) share an entry."""

    def __init__(self, metric):
        self.metric = metric
        self.name = metric.name
        self._cache: dict = {}

    def distance(self, p: Point, q: Point):
        key = (p, q) if p.sort_key() <= q.sort_key() else (q, p)
        try:
            return self._cache[key]
        except KeyError:
            d = self._cache[key] = self.metric.distance(*key)
            return d


def distance(metric, p: Point, q: Point):
    return metric.distance(p, q)


def point_to_set_distance(metric, x: Point, A):
    """min over a in A of d(x, a); the minimum is attained since A is finite."""
    elems = list(A)
    if not elems:
        raise EmptySet("point-to-set distance to an empty set")
    best = None
    for a in elems:
        d = metric.distance(x, a)
        if best is None or d < best:
            best = d
    return best
