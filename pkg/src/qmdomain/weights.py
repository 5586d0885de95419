"""Weights of a finite space, the presheaf metric rho, and the Yoneda embedding.

A weight is a map phi with phi(x) <= phi(y) + d(x, y).  Coweights are handled
as weights of the opposite space (:func:`coweight`).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .numerics import INF, ZERO, Ext, add, ext, fmt, tminus
from .space import FiniteSpace, Point, opposite, same_space


class WeightInequalityError(ValueError):
    def __init__(self, x: str, y: str, values):
        self.x, self.y = x, y
        phi_x, phi_y, dxy = values
        super().__init__(
            f"phi({y}) + d({x},{y}) = {fmt(phi_y)} + {fmt(dxy)} < phi({x}) = {fmt(phi_x)}"
        )


@dataclass(frozen=True, eq=False)
class Weight:
    space: FiniteSpace
    values: tuple[Ext, ...]

    def __call__(self, x: Point) -> Ext:
        return self.values[self.space.idx(x)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Weight):
            return NotImplemented
        return self.values == other.values and self.space == other.space

    def __hash__(self) -> int:
        return hash(self.values)

    def __repr__(self) -> str:
        return "Weight(" + ", ".join(fmt(v) for v in self.values) + ")"


def violation(space: FiniteSpace, values: Sequence[Ext]):
    """First (x, y) breaking the weight inequality, or None."""
    dist = space.dist
    n = len(values)
    for i in range(n):
        vi = values[i]
        if vi == ZERO:
            continue
        row = dist[i]
        for j in range(n):
            if add(values[j], row[j]) < vi:
                return i, j
    return None


def weight(space: FiniteSpace, values: Iterable) -> Weight:
    vals = tuple(ext(v) for v in values)
    if len(vals) != len(space):
        raise ValueError(f"expected {len(space)} values, got {len(vals)}")
    bad = violation(space, vals)
    if bad is not None:
        i, j = bad
        raise WeightInequalityError(
            space.points[i], space.points[j], (vals[i], vals[j], space.dist[i][j])
        )
    return Weight(space, vals)


def coweight(space: FiniteSpace, values: Iterable) -> Weight:
    """A coweight of ``space``: a weight of its opposite (psi(x) + d(x,y) >= psi(y))."""
    return weight(opposite(space), values)


def is_weight(space: FiniteSpace, values: Sequence[Ext]) -> bool:
    return violation(space, values) is None


def rho(phi: Weight, psi: Weight) -> Ext:
    """rho(phi, psi) = max_x psi(x) ⊖ phi(x)."""
    same_space(phi.space, psi.space)
    return rho_values(phi.values, psi.values)


def rho_values(a: Sequence[Ext], b: Sequence[Ext]) -> Ext:
    best = ZERO
    for p, q in zip(a, b):
        v = tminus(q, p)
        if v > best:
            best = v
            if best == INF:
                break
    return best


def yoneda(space: FiniteSpace, x: Point) -> Weight:
    """The representable weight d(-, x)."""
    j = space.idx(x)
    return Weight(space, tuple(row[j] for row in space.dist))


def representables(space: FiniteSpace) -> list[Weight]:
    return [yoneda(space, i) for i in range(len(space))]


def yoneda_lemma_check(x: Point, phi: Weight) -> tuple[Ext, Ext]:
    """(rho(y(x), phi), phi(x)); the two always agree."""
    return rho(yoneda(phi.space, x), phi), phi(x)


def inf_of(family: Sequence[Weight]) -> Weight:
    _check_family(family)
    return Weight(family[0].space, tuple(min(col) for col in zip(*(w.values for w in family))))


def sup_of(family: Sequence[Weight]) -> Weight:
    _check_family(family)
    return Weight(family[0].space, tuple(max(col) for col in zip(*(w.values for w in family))))


def _check_family(family: Sequence[Weight]) -> None:
    if not family:
        raise ValueError("empty weight family")
    for w in family[1:]:
        same_space(family[0].space, w.space)


def shift(phi: Weight, r, direction: str = "plus") -> Weight:
    """Pointwise r + phi (``"plus"``) or phi ⊖ r (``"tminus"``)."""
    r = ext(r)
    if direction == "plus":
        vals = tuple(add(r, v) for v in phi.values)
    elif direction == "tminus":
        vals = tuple(tminus(v, r) for v in phi.values)
    else:
        raise ValueError(f"unknown shift direction {direction!r}")
    return Weight(phi.space, vals)


def envelope(space: FiniteSpace, f: Sequence) -> Weight:
    """Largest weight below ``f``: x -> min_y f(y) + d(x, y)."""
    vals = [ext(v) for v in f]
    if len(vals) != len(space):
        raise ValueError(f"expected {len(space)} values, got {len(vals)}")
    return Weight(
        space,
        tuple(min(add(vals[j], row[j]) for j in range(len(vals))) for row in space.dist),
    )


def leq(phi: Weight, psi: Weight) -> bool:
    """Pointwise phi <= psi."""
    return all(a <= b for a, b in zip(phi.values, psi.values))
