"""Hausdorff distance on finite sets and the iterated hyperspace metric.

``hausdorff`` is the brute-force reference.  ``hausdorff_accelerated`` gives
the same value using an early-break scan (compiled when available) or a k-d
tree for large low-dimensional float inputs.  ``hyperspace_distance`` applies
the Hausdorff construction recursively to sets of sets.
"""
from __future__ import annotations

import math
from typing import Callable, Iterable

import numpy as np

from mvfix import _backend
from mvfix.errors import EmptySet, IncompatiblePoints, LevelCapExceeded, LevelMismatch, ModeMismatch
from mvfix.metric import Euclidean, Point, SupNorm
from mvfix.numeric import Mode, exact_sqrt

MAX_LEVEL = 4
# below these sizes the early-break scan beats the tree (see benchmarks/)
KDTREE_MIN_SIZE = 16384 if _backend.compiled_kernel is not None else 512
KDTREE_MAX_DIM = 4


class FiniteSet:
    """A nonempty finite set of Points (level 1) or of FiniteSets (level k+1).

    Elements are sorted canonically and deduplicated at construction, so two
    sets are equal exactly when their element tuples are.
    """

    __slots__ = ("elements", "level", "mode", "_hash")

    def __init__(self, elements: Iterable):
        items = list(elements)
        if not items:
            raise EmptySet("a FiniteSet must be nonempty")
        if all(isinstance(e, Point) for e in items):
            level = 1
        elif all(isinstance(e, FiniteSet) for e in items):
            levels = {e.level for e in items}
            if len(levels) != 1:
                raise LevelMismatch(f"elements at mixed levels {sorted(levels)}")
            level = levels.pop() + 1
        else:
            raise TypeError("FiniteSet elements must all be Points or all FiniteSets")
        modes = {e.mode for e in items}
        if len(modes) != 1:
            raise ModeMismatch("FiniteSet elements mix exact and float modes")
        items.sort(key=lambda e: e.sort_key())
        canon = [items[0]]
        for e in items[1:]:
            if e != canon[-1]:
                canon.append(e)
        self.elements = tuple(canon)
        self.level = level
        self.mode = modes.pop()
        self._hash = None

    def sort_key(self) -> tuple:
        return (self.level, tuple(e.sort_key() for e in self.elements))

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, item):
        return item in self.elements

    def __eq__(self, other):
        if not isinstance(other, FiniteSet):
            return NotImplemented
        return self.level == other.level and self.mode is other.mode and self.elements == other.elements

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.level, self.elements))
        return self._hash

    def issubset(self, other: "FiniteSet") -> bool:
        return all(e in other.elements for e in self.elements)

    def union(self, other: "FiniteSet") -> "FiniteSet":
        return FiniteSet(self.elements + other.elements)

    def __repr__(self):
        inner = ", ".join(e.label() if isinstance(e, Point) else repr(e) for e in self.elements)
        return "{" + inner + "}"


def _check_pair(A: FiniteSet, B: FiniteSet) -> None:
    if not isinstance(A, FiniteSet) or not isinstance(B, FiniteSet):
        raise TypeError("Hausdorff distances are defined between FiniteSets")
    if A.level != B.level:
        raise LevelMismatch(f"levels differ: {A.level} vs {B.level}")
    if A.mode is not B.mode:
        raise IncompatiblePoints("sets use different numeric modes")


def _directed_with(ground: Callable, A: Iterable, B: Iterable):
    """max over a of min over b of ground(a, b), no shortcuts."""
    worst = None
    B = list(B)
    for a in A:
        best = None
        for b in B:
            d = ground(a, b)
            if best is None or d < best:
                best = d
        if worst is None or best > worst:
            worst = best
    return worst


def directed_hausdorff(metric, A: FiniteSet, B: FiniteSet):
    """sup_{a in A} D(a, B) for level-1 sets."""
    _check_pair(A, B)
    if A.level != 1:
        raise LevelMismatch("directed_hausdorff works on sets of points; use hyperspace_distance")
    return _directed_with(metric.distance, A, B)


def hausdorff(metric, A: FiniteSet, B: FiniteSet):
    """Brute-force Hausdorff distance: the larger of the two directed distances."""
    ab = directed_hausdorff(metric, A, B)
    ba = directed_hausdorff(metric, B, A)
    return ab if ab >= ba else ba


def _dense_arrays(A: FiniteSet, B: FiniteSet):
    for e in A.elements + B.elements:
        if e.kind != "dense":
            raise IncompatiblePoints("the accelerated path needs dense points")
    dims = {len(e.data) for e in A.elements + B.elements}
    if len(dims) != 1:
        raise IncompatiblePoints(f"mixed dimensions {sorted(dims)}")
    return dims.pop()


_SHUFFLE_SEED = 0x5EED


def hausdorff_accelerated(metric, A: FiniteSet, B: FiniteSet, *, index: str | None = None):
    """Hausdorff distance for dense Euclidean or sup-norm sets, equal to ``hausdorff``.

    ``index`` is ``"scan"`` (early-break scan), ``"kdtree"`` (float mode only)
    or None to choose automatically.
    """
    _check_pair(A, B)
    if A.level != 1:
        raise LevelMismatch("hausdorff_accelerated works on sets of points")
    if isinstance(metric, SupNorm):
        sup = True
    elif isinstance(metric, Euclidean):
        sup = False
    else:
        raise IncompatiblePoints(f"no accelerated path for {metric!r}")
    dim = _dense_arrays(A, B)
    if index not in (None, "scan", "kdtree"):
        raise ValueError(f"unknown index {index!r}")

    if A.mode is Mode.EXACT:
        if index == "kdtree":
            raise ValueError("k-d tree indexing is float-only")
        a = [e.data for e in A.elements]
        b = [e.data for e in B.elements]
        k = _backend.python_kernel
        value = max(k(a, b, sup), k(b, a, sup))
        return value if sup else exact_sqrt(value)

    a = np.array([e.data for e in A.elements], dtype=np.float64)
    b = np.array([e.data for e in B.elements], dtype=np.float64)
    if index is None:
        index = "kdtree" if (dim <= KDTREE_MAX_DIM and min(len(a), len(b)) >= KDTREE_MIN_SIZE) else "scan"
    if index == "kdtree":
        from scipy.spatial import cKDTree

        p = math.inf if sup else 2
        ab = cKDTree(b).query(a, k=1, p=p)[0].max()
        ba = cKDTree(a).query(b, k=1, p=p)[0].max()
        return float(max(ab, ba))

    rng = np.random.default_rng(_SHUFFLE_SEED)
    a = np.ascontiguousarray(a[rng.permutation(len(a))])
    b = np.ascontiguousarray(b[rng.permutation(len(b))])
    if _backend.compiled_kernel is not None:
        k = _backend.compiled_kernel
        value = max(k(a, b, sup), k(b, a, sup))
    else:
        k = _backend.python_kernel
        la, lb = a.tolist(), b.tolist()
        value = max(k(la, lb, sup), k(lb, la, sup))
    return float(value) if sup else math.sqrt(value)


def hyperspace_distance(metric, U: FiniteSet, V: FiniteSet, *, max_level: int = MAX_LEVEL):
    """H^k(U, V): the Hausdorff metric induced by H^(k-1), with H^1 = hausdorff."""
    _check_pair(U, V)
    if U.level > max_level:
        raise LevelCapExceeded(f"level {U.level} exceeds the cap {max_level}")
    memo: dict = {}

    def ground(u, v):
        if isinstance(u, Point):
            return metric.distance(u, v)
        key = (u, v)
        if key not in memo:
            ab = _directed_with(ground, u, v)
            ba = _directed_with(ground, v, u)
            memo[key] = memo[(v, u)] = ab if ab >= ba else ba
        return memo[key]

    return ground(U, V)
