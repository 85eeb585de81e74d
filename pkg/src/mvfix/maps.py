"""Set-valued maps T: X -> finite subsets of X."""
from __future__ import annotations

from typing import Callable, Iterable, Mapping

from mvfix.errors import DomainEscape, EmptySet
from mvfix.hausdorff import FiniteSet
from mvfix.metric import Point


def _as_set(image) -> FiniteSet:
    if isinstance(image, FiniteSet):
        return image
    if isinstance(image, Point):
        return FiniteSet([image])
    return FiniteSet(image)


class TableMap:
    """A map given pointwise on a finite domain; images must stay in the domain."""

    kind = "table"

    def __init__(self, table: Mapping[Point, Iterable[Point] | FiniteSet]):
        if not table:
            raise EmptySet("a table map needs a nonempty domain")
        self.table = {x: _as_set(img) for x, img in table.items()}
        domain = set(self.table)
        for x, img in self.table.items():
            if img.level != 1:
                raise ValueError(f"image of {x.label()} must be a set of points")
            for y in img:
                if y not in domain:
                    raise DomainEscape(f"T({x.label()}) contains {y.label()}, outside the domain")
        self.domain = FiniteSet(self.table)

    def image(self, x: Point) -> FiniteSet:
        try:
            return self.table[x]
        except KeyError:
            raise DomainEscape(f"{x.label()} is not in the map's domain") from None

    def __repr__(self):
        return f"TableMap({len(self.table)} points)"


class RuleMap:
    """A map given by a function returning a finite witness set for each point.

    With a ``domain``, every argument and every returned point must lie in it.
    """

    kind = "rule"

    def __init__(self, fn: Callable[[Point], Iterable[Point] | Point], *,
                 domain: Iterable[Point] | None = None, name: str | None = None,
                 params: dict | None = None):
        self.fn = fn
        self.domain = FiniteSet(domain) if domain is not None else None
        self.name = name
        self.params = dict(params or {})

    def image(self, x: Point) -> FiniteSet:
        if self.domain is not None and x not in self.domain:
            raise DomainEscape(f"{x.label()} is not in the map's domain")
        img = _as_set(self.fn(x))
        if self.domain is not None:
            for y in img:
                if y not in self.domain:
                    raise DomainEscape(f"T({x.label()}) contains {y.label()}, outside the domain")
        return img

    def __repr__(self):
        return f"RuleMap({self.name or self.fn.__name__})"


def _scale(factor):
    def rule(x: Point):
        return Point.dense([factor * c for c in x.coords], mode=x.mode)
    return rule


def _scale_set(factors):
    def rule(x: Point):
        return [Point.dense([f * c for c in x.coords], mode=x.mode) for f in factors]
    return rule


# name -> factory(params) -> callable; params are already parsed scalars
RULES: dict[str, Callable[[dict], Callable]] = {
    "scale": lambda params: _scale(params["factor"]),
    "scale_set": lambda params: _scale_set(params["factors"]),
}


def rule_map(name: str, params: dict, domain=None) -> RuleMap:
    try:
        factory = RULES[name]
    except KeyError:
        raise ValueError(f"unknown map rule {name!r}; known: {sorted(RULES)}") from None
    return RuleMap(factory(params), domain=domain, name=name, params=params)
