"""Countable quasi-metric spaces given by an enumerator and a distance oracle.

Nothing about a streamed space is ever claimed beyond a finite horizon: prefix
views are ordinary finite spaces, and the refutations below carry explicit,
exactly-checkable witnesses.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .numerics import ZERO, Ext, fmt, parse, tminus
from .space import FiniteSpace, axiom_violation


@dataclass(eq=False)
class StreamedSpace:
    name: str
    enumerate: Callable[[int], str]
    dist: Callable[[str, str], Ext]
    description: str = ""
    _cache: list = field(default_factory=list, repr=False)

    def point(self, i: int) -> str:
        while len(self._cache) <= i:
            self._cache.append(self.enumerate(len(self._cache)))
        return self._cache[i]

    def points(self, horizon: int) -> list[str]:
        return [self.point(i) for i in range(horizon)]


def prefix(space: StreamedSpace, horizon: int) -> FiniteSpace:
    """Finite view on the first ``horizon`` enumerated points; axioms are checked on it."""
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    pts = tuple(space.points(horizon))
    if len(set(pts)) != len(pts):
        raise ValueError(f"enumerator of {space.name} repeats a point within horizon {horizon}")
    table = tuple(tuple(space.dist(a, b) for b in pts) for a in pts)
    bad = axiom_violation(pts, table)
    if bad is not None:
        raise bad
    return FiniteSpace(pts, table)


# ---------------------------------------------------------------------------
# Q ∩ [0, 1) with d(a, b) = a ⊖ b


_SB_LEVELS: list[list[Fraction]] = []


def stern_brocot_unit(i: int) -> Fraction:
    """i-th element of Q ∩ [0,1): 0 first, then the Stern-Brocot tree of (0,1) breadth-first."""
    if i == 0:
        return ZERO
    # _levels[k] lists the depth-(k+1) nodes left to right; the row below them is
    # built from the sorted sequence of everything seen so far.
    _levels = _SB_LEVELS
    if not _levels:
        _levels.append([Fraction(1, 2)])
    seen = sum(len(lv) for lv in _levels)
    while seen < i:
        bounds = sorted([Fraction(0), Fraction(1)] + [q for lv in _levels for q in lv])
        row = [
            Fraction(a.numerator + b.numerator, a.denominator + b.denominator)
            for a, b in zip(bounds, bounds[1:])
        ]
        _levels.append(row)
        seen += len(row)
    k = i - 1
    for lv in _levels:
        if k < len(lv):
            return lv[k]
        k -= len(lv)
    raise AssertionError("unreachable")


def _qlo_dist(a: str, b: str) -> Ext:
    return tminus(parse(a), parse(b))


def qlo() -> StreamedSpace:
    return StreamedSpace(
        name="qlo",
        enumerate=lambda i: fmt(stern_brocot_unit(i)),
        dist=_qlo_dist,
        description="rationals in [0,1) with d(a,b) = max(0, a - b); Stern-Brocot breadth-first order",
    )


def qlo_ascending(n: int) -> str:
    """The net x_n = 1 - 1/(n+1): 0, 1/2, 2/3, 3/4, ..."""
    return fmt(1 - Fraction(1, n + 1))


def qlo_sup_into(y: str) -> Fraction:
    """sup over all of QLO of d(x, y) = sup_x (x ⊖ y) = 1 - y (not attained)."""
    return 1 - parse(y)


def qlo_point_above(space: StreamedSpace, y: str, start: int = 0) -> tuple[int, str]:
    """First enumerated point strictly above ``y`` (index, label); always exists."""
    target = parse(y)
    i = start
    while True:
        p = space.point(i)
        if parse(p) > target:
            return i, p
        i += 1


STREAMED = {"qlo": qlo}
NETS = {"qlo-ascending": ("qlo", qlo_ascending)}


def streamed(name: str) -> StreamedSpace:
    try:
        return STREAMED[name]()
    except KeyError:
        raise KeyError(f"unknown streamed space {name!r}") from None


@dataclass(frozen=True)
class ClosedFormIdeal:
    """An ideal of a streamed space known in closed form.

    ``sup_gap(y)`` is rho(phi, d(-, y)) = sup_x d(x, y) ⊖ phi(x) and
    ``upper_radius(y, offset)`` is inf_x (offset + phi(x) - d(x, y)), the largest
    radius s making (y, s) an upper bound of the family (phi, offset).  Both are
    exact rationals (the latter may be negative: no upper bound at y).
    """

    space_name: str
    name: str
    value: Callable[[str], Ext]
    sup_gap: Callable[[str], Ext]
    upper_radius: Callable[[str, Fraction], Fraction]
    net: str


# the ideal generated by x_n = 1 - 1/(n+1) is identically 0
QLO_ZERO_IDEAL = ClosedFormIdeal(
    space_name="qlo",
    name="zero",
    value=lambda x: ZERO,
    sup_gap=qlo_sup_into,
    upper_radius=lambda y, offset: offset - qlo_sup_into(y),
    net="qlo-ascending",
)

CLOSED_FORM_IDEALS = {("qlo", "zero"): QLO_ZERO_IDEAL}
