"""Exact arithmetic over the logistic sequence tau_1 = 1/2, tau_{k+1} = (1 - tau_k) tau_k.

The denominator of tau_k is 2**(2**(k-1)), so beyond a dozen or so terms the
values cannot be materialised as rationals.  ``TauNumber`` instead keeps an
element of Q[tau_K+1, tau_K+2, ...] in multilinear normal form, using the
rewrite rule

    tau_k ** 2  ->  tau_k - tau_{k+1}

(the recurrence itself).  The leading monomials tau_k**2 are pairwise coprime,
so the rule set is a Groebner basis and the normal form is unique: identities
that follow from the recurrence are decided structurally.

Signs (and therefore ordering) are decided by certified interval enclosures:
outward-rounded doubles first, exact rationals for small indices, then
high-precision ``mpmath`` intervals.  A comparison that none of these can
settle raises ``UndecidableComparison`` instead of guessing.

Indices up to ``FOLD_INDEX`` are returned as plain ``Fraction`` objects.
"""
from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from functools import lru_cache

import mpmath

from mvfix.errors import ModeMismatch, UndecidableComparison

FOLD_INDEX = 8
EXACT_EVAL_LIMIT = 20
_MP_PRECISIONS = (256, 1024, 4096)

_INF = math.inf
_ONE = ()  # the empty monomial


def _dn(x: float) -> float:
    return math.nextafter(x, -_INF)


def _up(x: float) -> float:
    return math.nextafter(x, _INF)


# -- explicit values and enclosures of the generators ---------------------------

_explicit = [None, Fraction(1, 2)]


def explicit_tau(k: int) -> Fraction:
    """Exact rational tau_k.  Cost doubles with every index; keep k small."""
    if k < 1:
        raise ValueError(f"tau index must be >= 1, got {k}")
    while len(_explicit) <= k:
        t = _explicit[-1]
        _explicit.append((1 - t) * t)
    return _explicit[k]


_float_bounds: list[tuple[float, float]] = []


def _generator_bounds(k: int) -> tuple[float, float]:
    # f(t) = t - t^2 is increasing on [0, 1/2], so endpoints map to endpoints.
    if not _float_bounds:
        t = explicit_tau(FOLD_INDEX)
        f = float(t)
        _float_bounds.append((_dn(f), _up(f)))
    i = k - FOLD_INDEX
    while len(_float_bounds) <= i:
        lo, hi = _float_bounds[-1]
        _float_bounds.append((_dn(lo - _up(lo * lo)), _up(hi - _dn(hi * hi))))
    return _float_bounds[i]


_mp_bounds: dict[int, list] = {}


def _generator_bounds_mp(k: int, prec: int):
    seq = _mp_bounds.setdefault(prec, [])
    with mpmath.iv.workprec(prec):
        if not seq:
            t = explicit_tau(FOLD_INDEX)
            seq.append(mpmath.iv.mpf(t.numerator) / t.denominator)
        while len(seq) <= k - FOLD_INDEX:
            x = seq[-1]
            lo = mpmath.iv.mpf(x.a)
            hi = mpmath.iv.mpf(x.b)
            lo = lo - lo * lo
            hi = hi - hi * hi
            seq.append(mpmath.iv.mpf([lo.a, hi.b]))
    return seq[k - FOLD_INDEX]


# -- polynomial normal form -----------------------------------------------------
# A polynomial is a dict {monomial: Fraction}; a monomial is a sorted tuple of
# distinct generator indices (all > FOLD_INDEX).


@lru_cache(maxsize=None)
def _reduce(powers: tuple[tuple[int, int], ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    for i, (k, e) in enumerate(powers):
        if e >= 2:
            lowered = dict(powers)
            lowered[k] = e - 1
            shifted = dict(powers)
            shifted[k] = e - 2
            shifted[k + 1] = shifted.get(k + 1, 0) + 1
            out: dict[tuple[int, ...], int] = {}
            for mono, c in _reduce(_canon(lowered)):
                out[mono] = out.get(mono, 0) + c
            for mono, c in _reduce(_canon(shifted)):
                out[mono] = out.get(mono, 0) - c
            return tuple((m, c) for m, c in out.items() if c)
    return ((tuple(k for k, _ in powers), 1),)


def _canon(powers: dict[int, int]) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((k, e) for k, e in powers.items() if e))


@lru_cache(maxsize=1 << 16)
def _mono_mul(a: tuple[int, ...], b: tuple[int, ...]):
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    counts = Counter(a)
    counts.update(b)
    return _reduce(_canon(counts))


def _padd(p: dict, q: dict, sign: int = 1) -> dict:
    out = dict(p)
    for m, c in q.items():
        v = out.get(m, 0) + sign * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _pmul(p: dict, q: dict) -> dict:
    out: dict = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            c = c1 * c2
            for m, k in _mono_mul(m1, m2):
                v = out.get(m, 0) + c * k
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
    return out


def _pconst(p: dict):
    """Return the constant value of ``p`` or None if it involves generators."""
    if not p:
        return Fraction(0)
    if len(p) == 1 and _ONE in p:
        return p[_ONE]
    return None


def _pbounds(p: dict) -> tuple[float, float]:
    lo = hi = 0.0
    for mono, c in p.items():
        plo = phi = 1.0
        for k in mono:
            glo, ghi = _generator_bounds(k)
            plo, phi = _dn(plo * glo), _up(phi * ghi)
        f = float(c)
        clo, chi = (f, f) if Fraction(f) == c else (_dn(f), _up(f))
        if c >= 0:
            tlo, thi = _dn(clo * plo), _up(chi * phi)
        else:
            tlo, thi = _dn(clo * phi), _up(chi * plo)
        lo, hi = _dn(lo + tlo), _up(hi + thi)
    return lo, hi


def _pexact(p: dict) -> Fraction:
    total = Fraction(0)
    for mono, c in p.items():
        term = Fraction(c)
        for k in mono:
            term *= explicit_tau(k)
        total += term
    return total


def _pbounds_mp(p: dict, prec: int):
    with mpmath.iv.workprec(prec):
        total = mpmath.iv.mpf(0)
        for mono, c in p.items():
            term = mpmath.iv.mpf(c.numerator) / c.denominator
            for k in mono:
                term = term * _generator_bounds_mp(k, prec)
            total = total + term
        return total


def _psign(p: dict) -> int:
    if not p:
        return 0
    const = _pconst(p)
    if const is not None:
        return (const > 0) - (const < 0)
    lo, hi = _pbounds(p)
    if lo > 0:
        return 1
    if hi < 0:
        return -1
    if max(max(m) for m in p if m) <= EXACT_EVAL_LIMIT:
        v = _pexact(p)
        return (v > 0) - (v < 0)
    for prec in _MP_PRECISIONS:
        iv = _pbounds_mp(p, prec)
        if iv.a > 0:
            return 1
        if iv.b < 0:
            return -1
    raise UndecidableComparison(f"cannot decide the sign of {_pformat(p)}")


def _pformat(p: dict) -> str:
    if not p:
        return "0"
    parts = []
    for mono in sorted(p, key=lambda m: (len(m), m)):
        c = p[mono]
        gens = "*".join(f"tau({k})" for k in mono)
        if not gens:
            body = str(abs(c))
        elif abs(c) == 1:
            body = gens
        else:
            body = f"{abs(c)}*{gens}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# -- the number type -------------------------------------------------------------


def _lift(x) -> dict:
    if isinstance(x, TauNumber):
        raise TypeError("already a TauNumber")
    if isinstance(x, (int, Fraction)):
        return {_ONE: Fraction(x)} if x else {}
    if isinstance(x, float):
        raise ModeMismatch("cannot combine an exact TauNumber with a float")
    return None


class TauNumber:
    """num / den with num, den polynomials in the tau generators (den > 0 not required)."""

    __slots__ = ("_num", "_den", "_hash", "_bounds")

    def __init__(self, num: dict, den: dict | None = None):
        self._num = num
        self._den = den if den is not None else {_ONE: Fraction(1)}
        self._hash = None
        self._bounds = None

    @classmethod
    def generator(cls, k: int) -> "TauNumber":
        if k <= FOLD_INDEX:
            raise ValueError(f"tau({k}) is represented as a Fraction")
        return cls({(k,): Fraction(1)})

    @staticmethod
    def _make(num: dict, den: dict):
        dc = _pconst(den)
        if dc is not None:
            if dc == 0:
                raise ZeroDivisionError("TauNumber division by zero")
            nc = _pconst(num)
            if nc is not None:
                return nc / dc
            if dc != 1:
                num = {m: c / dc for m, c in num.items()}
            return TauNumber(num)
        return TauNumber(num, den)

    # structure

    @property
    def numerator_terms(self) -> dict:
        return dict(self._num)

    @property
    def denominator_terms(self) -> dict:
        return dict(self._den)

    def generators(self) -> set[int]:
        return {k for p in (self._num, self._den) for m in p for k in m}

    def bounds(self) -> tuple[float, float] | None:
        """Certified float enclosure of the value, or None if the denominator straddles 0."""
        if self._bounds is None:
            nlo, nhi = _pbounds(self._num)
            dlo, dhi = _pbounds(self._den)
            if dlo <= 0 <= dhi:
                self._bounds = False
            else:
                qs = [nlo / dlo, nlo / dhi, nhi / dlo, nhi / dhi]
                self._bounds = (_dn(min(qs)), _up(max(qs)))
        return self._bounds or None

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, TauNumber):
            return other._num, other._den
        lifted = _lift(other)
        if lifted is None:
            return None
        return lifted, {_ONE: Fraction(1)}

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        on, od = o
        if od == self._den:
            return self._make(_padd(self._num, on), self._den)
        return self._make(_padd(_pmul(self._num, od), _pmul(on, self._den)), _pmul(self._den, od))

    __radd__ = __add__

    def __neg__(self):
        return TauNumber({m: -c for m, c in self._num.items()}, self._den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + TauNumber(*o).__neg__()

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return TauNumber(*o) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        on, od = o
        return self._make(_pmul(self._num, on), _pmul(self._den, od))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        on, od = o
        if not on:
            raise ZeroDivisionError("TauNumber division by zero")
        return self._make(_pmul(self._num, od), _pmul(self._den, on))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return TauNumber(*o) / self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # ordering

    def sign(self) -> int:
        return _psign(self._num) * _psign(self._den)

    def _cmp(self, other) -> int:
        if isinstance(other, float):
            raise ModeMismatch("cannot compare an exact TauNumber with a float")
        if isinstance(other, TauNumber) and other._num == self._num and other._den == self._den:
            return 0
        b1 = self.bounds()
        b2 = other.bounds() if isinstance(other, TauNumber) else None
        if b1 is not None:
            if b2 is None and isinstance(other, (int, Fraction)):
                f = float(other)
                b2 = (_dn(f), _up(f))
            if b2 is not None:
                if b1[1] < b2[0]:
                    return -1
                if b1[0] > b2[1]:
                    return 1
        return _sign_of(self - other)

    def __eq__(self, other):
        if not isinstance(other, (TauNumber, int, Fraction)):
            return NotImplemented
        return self._cmp(other) == 0

    def __lt__(self, other):
        if not isinstance(other, (TauNumber, int, Fraction, float)):
            return NotImplemented
        return self._cmp(other) < 0

    def __le__(self, other):
        if not isinstance(other, (TauNumber, int, Fraction, float)):
            return NotImplemented
        return self._cmp(other) <= 0

    def __gt__(self, other):
        if not isinstance(other, (TauNumber, int, Fraction, float)):
            return NotImplemented
        return self._cmp(other) > 0

    def __ge__(self, other):
        if not isinstance(other, (TauNumber, int, Fraction, float)):
            return NotImplemented
        return self._cmp(other) >= 0

    def __hash__(self):
        # Consistent with __eq__ for values built through the recurrence; a
        # materialised rational equal to a generator expression hashes differently.
        if self._hash is None:
            self._hash = hash((frozenset(self._num.items()), frozenset(self._den.items())))
        return self._hash

    def __bool__(self):
        return self.sign() != 0

    def __float__(self):
        b = self.bounds()
        if b is not None:
            return (b[0] + b[1]) / 2
        return float(_pbounds_mp(self._num, 256).mid / _pbounds_mp(self._den, 256).mid)

    def __str__(self):
        num = _pformat(self._num)
        if _pconst(self._den) == 1:
            return num
        return f"({num})/({_pformat(self._den)})"

    def __repr__(self):
        return f"TauNumber({self})"


def _sign_of(x) -> int:
    if isinstance(x, TauNumber):
        return x.sign()
    return (x > 0) - (x < 0)


def tau(k: int):
    """tau_k: a Fraction for k <= FOLD_INDEX, a symbolic generator beyond."""
    if k < 1:
        raise ValueError(f"tau index must be >= 1, got {k}")
    if k <= FOLD_INDEX:
        return explicit_tau(k)
    return TauNumber.generator(k)
