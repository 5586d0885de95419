"""Finite quasi-metric spaces with validated distance tables."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

from .numerics import INF, Ext, add, ext, fmt

Point = Union[str, int]


class AxiomViolation(ValueError):
    """Base class for a failed quasi-metric axiom; carries the offending values."""


class ReflexivityViolation(AxiomViolation):
    def __init__(self, x: str, value: Ext):
        self.x, self.value = x, value
        super().__init__(f"d({x},{x}) = {fmt(value)} != 0")


class TriangleViolation(AxiomViolation):
    def __init__(self, x: str, y: str, z: str, dxy: Ext, dyz: Ext, dxz: Ext):
        self.x, self.y, self.z = x, y, z
        self.values = (dxy, dyz, dxz)
        super().__init__(
            f"d({x},{y}) + d({y},{z}) = {fmt(dxy)} + {fmt(dyz)} < d({x},{z}) = {fmt(dxz)}"
        )


class SeparationViolation(AxiomViolation):
    def __init__(self, x: str, y: str):
        self.x, self.y = x, y
        super().__init__(f"d({x},{y}) = d({y},{x}) = 0 for distinct points {x}, {y}")


class SpaceMismatch(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteSpace:
    """Points (opaque string labels, order fixes indexing) and a total distance table.

    Construct through :func:`validate`; the bare constructor does not check axioms.
    """

    points: tuple[str, ...]
    dist: tuple[tuple[Ext, ...], ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(self.points)})

    def __len__(self) -> int:
        return len(self.points)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, FiniteSpace):
            return NotImplemented
        return self.points == other.points and self.dist == other.dist

    def __hash__(self) -> int:
        return hash((self.points, self.dist))

    def idx(self, p: Point) -> int:
        if isinstance(p, int):
            if not 0 <= p < len(self.points):
                raise KeyError(f"point index {p} out of range")
            return p
        try:
            return self._index[p]
        except KeyError:
            raise KeyError(f"unknown point {p!r}") from None

    def d(self, x: Point, y: Point) -> Ext:
        return self.dist[self.idx(x)][self.idx(y)]

    def __repr__(self) -> str:
        rows = ["[" + ", ".join(fmt(v) for v in row) + "]" for row in self.dist]
        return f"FiniteSpace({list(self.points)}, [{', '.join(rows)}])"


def axiom_violation(points: Sequence[str], dist) -> AxiomViolation | None:
    """First violated axiom of the table, or None."""
    n = len(points)
    for i in range(n):
        if dist[i][i] != 0:
            return ReflexivityViolation(points[i], dist[i][i])
    for i in range(n):
        row = dist[i]
        for j in range(n):
            dij = row[j]
            if dij == INF:
                continue
            dj = dist[j]
            for k in range(n):
                if add(dij, dj[k]) < row[k]:
                    return TriangleViolation(points[i], points[j], points[k], dij, dj[k], row[k])
    for i in range(n):
        for j in range(i + 1, n):
            if dist[i][j] == 0 and dist[j][i] == 0:
                return SeparationViolation(points[i], points[j])
    return None


def validate(points: Sequence[str], dist) -> FiniteSpace:
    """Build a :class:`FiniteSpace`, raising the first axiom violation found."""
    points = tuple(str(p) for p in points)
    n = len(points)
    if n == 0:
        raise ValueError("a space needs at least one point")
    if len(set(points)) != n:
        raise ValueError("point labels must be distinct")
    if len(dist) != n or any(len(row) != n for row in dist):
        raise ValueError(f"distance table must be {n}x{n}")
    table = tuple(tuple(ext(v) for v in row) for row in dist)
    bad = axiom_violation(points, table)
    if bad is not None:
        raise bad
    return FiniteSpace(points, table)


def specialization_order(space: FiniteSpace) -> frozenset[tuple[str, str]]:
    """All pairs (x, y) with d(x, y) = 0."""
    pts = space.points
    return frozenset(
        (pts[i], pts[j])
        for i in range(len(pts))
        for j in range(len(pts))
        if space.dist[i][j] == 0
    )


def opposite(space: FiniteSpace) -> FiniteSpace:
    n = len(space)
    return FiniteSpace(space.points, tuple(tuple(space.dist[j][i] for j in range(n)) for i in range(n)))


def singleton(label: str = "*") -> FiniteSpace:
    return FiniteSpace((label,), ((ext(0),),))


def same_space(a: FiniteSpace, b: FiniteSpace) -> None:
    if a is not b and a != b:
        raise SpaceMismatch("operands live on different spaces")
