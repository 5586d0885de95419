"""Ideals, bounded ideals, colimits and limits of weights, and nets."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

from .distributors import NonExpansiveMap
from .numerics import INF, ZERO, Ext, add, fmt, tminus
from .space import FiniteSpace, Point, opposite, same_space
from .streamed import StreamedSpace
from .weights import Weight, rho_values, yoneda


class Check(NamedTuple):
    ok: bool
    witness: object = None


def is_ideal(phi: Weight) -> Check:
    """Finite-carrier ideal test.

    phi is an ideal iff min phi = 0 and every pair x, y has a common z with
    phi(z) + d(x, z) = phi(x) and phi(z) + d(y, z) = phi(y).  On failure the
    witness is ``("inf", min phi)`` or the offending pair of labels.
    """
    vals = phi.values
    low = min(vals)
    if low != ZERO:
        return Check(False, ("inf", fmt(low)))
    dist = phi.space.dist
    n = len(vals)
    # hits[x] = set of z that realise phi(x) exactly
    hits = [
        {z for z in range(n) if add(vals[z], dist[x][z]) == vals[x]}
        for x in range(n)
    ]
    pts = phi.space.points
    for x in range(n):
        for y in range(x + 1, n):
            if not hits[x] & hits[y]:
                return Check(False, (pts[x], pts[y]))
    return Check(True)


def is_bounded(phi: Weight) -> Check:
    """Some point a with r = max_x d(x, a) ⊖ phi(x) finite; witness (a, r) minimises r."""
    space = phi.space
    best = None
    for a in range(len(space)):
        r = rho_values(phi.values, [row[a] for row in space.dist])
        if r != INF and (best is None or r < best[1]):
            best = (a, r)
    if best is None:
        return Check(False)
    return Check(True, (space.points[best[0]], best[1]))


def _colimit_targets(space: FiniteSpace, coeffs: Sequence[Ext], image: Sequence[int]) -> list[Ext]:
    """For each x: max_k d(f(k), x) ⊖ coeffs[k]."""
    dist = space.dist
    return [
        max((tminus(dist[image[k]][x], coeffs[k]) for k in range(len(image))), default=ZERO)
        for x in range(len(space))
    ]


def colimit_of(phi: Weight) -> str | None:
    """The point b with d(b, y) = rho(phi, d(-, y)) for all y, if any."""
    space = phi.space
    target = _colimit_targets(space, phi.values, range(len(space)))
    for b in range(len(space)):
        if list(space.dist[b]) == target:
            return space.points[b]
    return None


def weighted_colimit(f: NonExpansiveMap, phi: Weight) -> str | None:
    """b with d_X(b, x) = rho_K(phi, d_X(f(-), x)) for all x."""
    same_space(phi.space, f.source)
    X = f.target
    target = _colimit_targets(X, phi.values, f.assignment)
    for b in range(len(X)):
        if list(X.dist[b]) == target:
            return X.points[b]
    return None


def weighted_limit(f: NonExpansiveMap, psi: Weight) -> str | None:
    """a with d_X(x, a) = rho_K(psi, d_X(x, f(-))) for all x.

    ``psi`` is a coweight of K, i.e. a weight of opposite(K).
    """
    if psi.space != opposite(f.source):
        same_space(psi.space, f.source)  # also accept coweights declared on K itself
    X = f.target
    img = f.assignment
    dist = X.dist
    target = [
        max((tminus(dist[x][img[k]], psi.values[k]) for k in range(len(img))), default=ZERO)
        for x in range(len(X))
    ]
    for a in range(len(X)):
        if [dist[x][a] for x in range(len(X))] == target:
            return X.points[a]
    return None


def is_representable(phi: Weight) -> str | None:
    for x in range(len(phi.space)):
        if yoneda(phi.space, x).values == phi.values:
            return phi.space.points[x]
    return None


# ---------------------------------------------------------------------------
# nets


@dataclass(frozen=True)
class NetPresentation:
    """A net given by a finite prefix and a tail.

    ``tail is None`` means eventually constant (the last prefix point repeats).
    Otherwise ``tail(n)`` gives the n-th point for n >= len(prefix); such nets
    live on streamed spaces and are only ever examined up to a horizon.
    """

    space: FiniteSpace | StreamedSpace
    prefix: tuple[str, ...]
    tail: Callable[[int], str] | None = None
    tail_name: str = "constant"

    def point(self, n: int) -> str:
        if n < len(self.prefix):
            return self.prefix[n]
        if self.tail is None:
            return self.prefix[-1]
        return self.tail(n)


@dataclass(frozen=True)
class HorizonWeight:
    """Stage value inf_{i<=H} sup_{i<=j<=H} d(y, x_j) at the first H enumerated points."""

    horizon: int
    points: tuple[str, ...]
    values: tuple[Ext, ...]


def _dist(space, a: str, b: str) -> Ext:
    if isinstance(space, FiniteSpace):
        return space.d(a, b)
    return space.dist(a, b)


def _stage(space, ys: Sequence[str], xs: Sequence[str]) -> list[Ext]:
    out = []
    for y in ys:
        col = [_dist(space, y, x) for x in xs]
        # suffix maxima, then their minimum
        best = INF
        running = ZERO
        for v in reversed(col):
            running = max(running, v)
            best = min(best, running)
        out.append(best)
    return out


def ideal_from_net(net: NetPresentation, horizon: int | None = None) -> Weight | HorizonWeight:
    if net.tail is None:
        if not isinstance(net.space, FiniteSpace):
            raise ValueError("eventually constant nets are supported on finite spaces only")
        # the constant tail contributes d(-, last); the inf-sup over the prefix never goes lower
        xs = list(net.prefix) + [net.prefix[-1]]
        return Weight(net.space, tuple(_stage(net.space, net.space.points, xs)))
    if horizon is None:
        raise ValueError("a horizon is required for streamed tails")
    space = net.space
    pts = space.points(horizon) if isinstance(space, StreamedSpace) else list(space.points[:horizon])
    xs = [net.point(n) for n in range(horizon)]
    return HorizonWeight(horizon, tuple(pts), tuple(_stage(space, pts, xs)))


def forward_cauchy_gap(net: NetPresentation, horizon: int | None = None) -> Ext:
    """inf_{i} sup_{k>=j>=i} d(x_j, x_k), exact for constant tails, truncated at ``horizon`` otherwise."""
    if net.tail is None:
        return ZERO
    if horizon is None:
        raise ValueError("a horizon is required for streamed tails")
    xs = [net.point(n) for n in range(horizon)]
    best = INF
    for i in range(len(xs)):
        worst = ZERO
        for j in range(i, len(xs)):
            for k in range(j, len(xs)):
                worst = max(worst, _dist(net.space, xs[j], xs[k]))
        best = min(best, worst)
    return best


@dataclass(frozen=True)
class NetBoundVerdict:
    bounded: bool
    anchor: str | None
    radius: Ext | None
    horizon: int | None = None
    witness: object = None


def bounded_net_check(net: NetPresentation, horizon: int | None = None,
                      anchor: str | None = None,
                      sup_into: Callable[[str], Ext] | None = None) -> NetBoundVerdict:
    """Is there a, r < inf with r + d(x, x_j) >= d(x, a) cofinally, for every x?

    For constant tails this is decided exactly through the generated ideal.  For
    streamed tails the condition is evaluated at the first ``horizon`` points; a
    closed form ``sup_into(a) = sup_x d(x, a)`` certifies the bound beyond it.
    """
    if net.tail is None:
        phi = ideal_from_net(net)
        space = phi.space
        anchors = [anchor] if anchor is not None else list(space.points)
        for a in anchors:
            r = rho_values(phi.values, [space.d(x, a) for x in space.points])
            if r != INF:
                return NetBoundVerdict(True, a, r)
        # r is infinite for every anchor tried: report the point that forces it
        a = anchors[0]
        for x in space.points:
            if tminus(space.d(x, a), phi(x)) == INF:
                return NetBoundVerdict(False, a, None, witness={"anchor": a, "x": x})
        return NetBoundVerdict(False, None, None)
    if horizon is None:
        raise ValueError("a horizon is required for streamed tails")
    space = net.space
    pts = space.points(horizon)
    a = anchor if anchor is not None else pts[0]
    if sup_into is not None:
        r = sup_into(a)
    else:
        r = max(_dist(space, x, a) for x in pts)
    if r == INF:
        return NetBoundVerdict(False, a, None, horizon)
    xs = [net.point(n) for n in range(horizon)]
    for x in pts:
        dxa = _dist(space, x, a)
        for i in range(len(xs)):
            if not any(add(r, _dist(space, x, xs[j])) >= dxa for j in range(i, len(xs))):
                return NetBoundVerdict(False, a, r, horizon, {"x": x, "i": i})
    return NetBoundVerdict(True, a, r, horizon)
