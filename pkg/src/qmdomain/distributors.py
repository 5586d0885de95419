"""Min-plus distributor calculus between finite spaces."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from . import _kernels
from .numerics import Ext, add, ext, fmt
from .space import FiniteSpace, Point, SpaceMismatch, same_space
from .weights import Weight, rho, yoneda


class BimoduleViolation(ValueError):
    pass


class NotNonExpansive(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Distributor:
    """phi: X -/-> Y, stored as the table phi(x, y) (rows indexed by X)."""

    source: FiniteSpace
    target: FiniteSpace
    values: tuple[tuple[Ext, ...], ...]

    def __call__(self, x: Point, y: Point) -> Ext:
        return self.values[self.source.idx(x)][self.target.idx(y)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Distributor):
            return NotImplemented
        return (self.values == other.values and self.source == other.source
                and self.target == other.target)

    def __hash__(self) -> int:
        return hash(self.values)


def bimodule_violation(source: FiniteSpace, target: FiniteSpace, values):
    """First (x, x', y, y') with d_Y(y,y') + phi(x,y) + d_X(x',x) < phi(x',y'), or None."""
    dx, dy = source.dist, target.dist
    n, m = len(source), len(target)
    for x in range(n):
        for y in range(m):
            v = values[x][y]
            for xp in range(n):
                left = add(v, dx[xp][x])
                for yp in range(m):
                    if add(dy[y][yp], left) < values[xp][yp]:
                        return x, xp, y, yp
    return None


def distributor(source: FiniteSpace, target: FiniteSpace, values) -> Distributor:
    table = tuple(tuple(ext(v) for v in row) for row in values)
    if len(table) != len(source) or any(len(r) != len(target) for r in table):
        raise ValueError(f"distributor table must be {len(source)}x{len(target)}")
    bad = bimodule_violation(source, target, table)
    if bad is not None:
        x, xp, y, yp = (source.points[bad[0]], source.points[bad[1]],
                        target.points[bad[2]], target.points[bad[3]])
        raise BimoduleViolation(f"bimodule law fails at x={x}, x'={xp}, y={y}, y'={yp}")
    return Distributor(source, target, table)


def identity(space: FiniteSpace) -> Distributor:
    return Distributor(space, space, space.dist)


def _minplus_exact(left, right) -> list[list[Ext]]:
    """out[i][k] = min_j left[i][j] + right[j][k], via the integer kernel when it fits."""
    flat = [v for row in left for v in row] + [v for row in right for v in row]
    try:
        den = _kernels.common_denominator(flat)
        a = _kernels.scale(left, den)
        b = _kernels.scale(right, den)
    except _kernels.ScaleOverflow:
        return [
            [min(add(left[i][j], right[j][k]) for j in range(len(right))) for k in range(len(right[0]))]
            for i in range(len(left))
        ]
    return _kernels.unscale(_kernels.minplus(a, b), den)


def compose(psi: Distributor, phi: Distributor) -> Distributor:
    """(psi ∘ phi)(x, z) = min_y psi(y, z) + phi(x, y)."""
    same_space(phi.target, psi.source)
    out = _minplus_exact(phi.values, psi.values)
    return Distributor(phi.source, psi.target, tuple(tuple(r) for r in out))


@dataclass(frozen=True, eq=False)
class NonExpansiveMap:
    source: FiniteSpace
    target: FiniteSpace
    assignment: tuple[int, ...]  # target index of each source point

    def __call__(self, x: Point) -> str:
        return self.target.points[self.assignment[self.source.idx(x)]]

    def __eq__(self, other) -> bool:
        if not isinstance(other, NonExpansiveMap):
            return NotImplemented
        return (self.assignment == other.assignment and self.source == other.source
                and self.target == other.target)

    def __hash__(self) -> int:
        return hash(self.assignment)


def nonexpansive_map(source: FiniteSpace, target: FiniteSpace,
                     assignment: Mapping[str, str] | Sequence[Point]) -> NonExpansiveMap:
    if isinstance(assignment, Mapping):
        img = tuple(target.idx(assignment[p]) for p in source.points)
    else:
        img = tuple(target.idx(p) for p in assignment)
    if len(img) != len(source):
        raise ValueError("assignment must cover every source point")
    for i in range(len(source)):
        for j in range(len(source)):
            if source.dist[i][j] < target.dist[img[i]][img[j]]:
                raise NotNonExpansive(
                    f"d_X({source.points[i]},{source.points[j]}) = {fmt(source.dist[i][j])} < "
                    f"d_Y(f({source.points[i]}),f({source.points[j]})) = {fmt(target.dist[img[i]][img[j]])}"
                )
    return NonExpansiveMap(source, target, img)


def identity_map(space: FiniteSpace) -> NonExpansiveMap:
    return NonExpansiveMap(space, space, tuple(range(len(space))))


def graph(f: NonExpansiveMap) -> Distributor:
    """f_*(x, y) = d_Y(f(x), y)."""
    dy = f.target.dist
    return Distributor(f.source, f.target, tuple(dy[f.assignment[x]] for x in range(len(f.source))))


def cograph(f: NonExpansiveMap) -> Distributor:
    """f^*(y, x) = d_Y(y, f(x))."""
    dy = f.target.dist
    return Distributor(
        f.target, f.source,
        tuple(tuple(dy[y][f.assignment[x]] for x in range(len(f.source))) for y in range(len(f.target))),
    )


@dataclass(frozen=True)
class AdjunctionReport:
    holds: bool
    # ("unit" | "counit", first argument, second argument, lhs value, rhs value)
    violation: tuple | None = None


def adjunction_check(f: NonExpansiveMap, lower: Distributor | None = None,
                     upper: Distributor | None = None) -> AdjunctionReport:
    """f^* ∘ f_* <= d_X and f_* ∘ f^* >= d_Y, evaluated at every pair.

    ``lower``/``upper`` override the graph and cograph (negative controls).
    """
    fs = lower if lower is not None else graph(f)
    fc = upper if upper is not None else cograph(f)
    unit = compose(fc, fs)
    X, Y = f.source, f.target
    for i in range(len(X)):
        for j in range(len(X)):
            if unit.values[i][j] > X.dist[i][j]:
                return AdjunctionReport(False, ("unit", X.points[i], X.points[j],
                                                unit.values[i][j], X.dist[i][j]))
    counit = compose(fs, fc)
    for i in range(len(Y)):
        for j in range(len(Y)):
            if counit.values[i][j] < Y.dist[i][j]:
                return AdjunctionReport(False, ("counit", Y.points[i], Y.points[j],
                                                counit.values[i][j], Y.dist[i][j]))
    return AdjunctionReport(True)


def pushforward(f: NonExpansiveMap, phi: Weight) -> Weight:
    """f→(phi)(y) = min_x phi(x) + d_Y(y, f(x))."""
    same_space(phi.space, f.source)
    dy = f.target.dist
    img = f.assignment
    vals = tuple(
        min(add(phi.values[x], dy[y][img[x]]) for x in range(len(img)))
        for y in range(len(f.target))
    )
    return Weight(f.target, vals)


def pullback(f: NonExpansiveMap, psi: Weight) -> Weight:
    """f←(psi)(x) = psi(f(x))."""
    same_space(psi.space, f.target)
    return Weight(f.source, tuple(psi.values[y] for y in f.assignment))


def map_adjoint_pair(f: NonExpansiveMap, g: NonExpansiveMap):
    """f ⊣ g iff d_Y(f(x), y) = d_X(x, g(y)) everywhere.

    Returns (True, None) or (False, (x, y)) with the first failing pair.
    """
    if f.source != g.target or f.target != g.source:
        raise SpaceMismatch("f: X -> Y and g: Y -> X required")
    X, Y = f.source, f.target
    for x in range(len(X)):
        for y in range(len(Y)):
            if Y.dist[f.assignment[x]][y] != X.dist[x][g.assignment[y]]:
                return False, (X.points[x], Y.points[y])
    return True, None


def weight_as_distributor(phi: Weight, star: FiniteSpace) -> Distributor:
    """A weight of X is a distributor X -/-> * (the one-point space)."""
    return Distributor(phi.space, star, tuple((v,) for v in phi.values))


def representable_naturality(f: NonExpansiveMap, x: Point) -> bool:
    """f→(y(x)) == y(f(x))."""
    return pushforward(f, yoneda(f.source, x)).values == yoneda(f.target, f(x)).values


def adjunction_rho_pair(f: NonExpansiveMap, phi: Weight, psi: Weight) -> tuple[Ext, Ext]:
    """(rho_Y(f→phi, psi), rho_X(phi, f←psi)); equal for every f, phi, psi."""
    return rho(pushforward(f, phi), psi), rho(phi, pullback(f, psi))

