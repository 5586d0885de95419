"""The poset of formal balls, directed families, joins, and way-below data.

A directed family is stored as ``(ideal, offset)`` and stands for the set
{(x, offset + r) : ideal(x) < r}.  On a finite carrier its upper bounds at a
point y are exactly the balls (y, s) with s <= s_y, where

    s_y = min over x with ideal(x) < inf of  offset + ideal(x) - d(x, y),

so joins can be found by brute force over the points alone.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .ideals import colimit_of, is_bounded, is_ideal
from .numerics import INF, ZERO, Ext, add, ext, fmt, tminus
from .space import FiniteSpace, Point
from .streamed import ClosedFormIdeal, StreamedSpace, qlo_point_above
from .verdict import PASSED_AT_HORIZON, Verdict, failing, passing
from .weights import Weight, representables


class InfiniteRadius(ValueError):
    pass


@dataclass(frozen=True)
class FormalBall:
    point: str
    radius: Fraction

    def __post_init__(self):
        r = ext(self.radius)
        if r == INF:
            raise InfiniteRadius("formal balls have finite radius")
        object.__setattr__(self, "radius", r)

    def __repr__(self) -> str:
        return f"({self.point}, {fmt(self.radius)})"

    def to_json(self) -> dict:
        return {"point": self.point, "radius": fmt(self.radius)}


@dataclass(frozen=True)
class DirectedBallFamily:
    ideal: Weight
    offset: Fraction

    def __post_init__(self):
        off = ext(self.offset)
        if off == INF:
            raise InfiniteRadius("family offset must be finite")
        object.__setattr__(self, "offset", off)

    def shifted(self, t) -> "DirectedBallFamily":
        return DirectedBallFamily(self.ideal, self.offset + ext(t))

    def normalized(self) -> "DirectedBallFamily":
        return DirectedBallFamily(self.ideal, ZERO)

    def contains(self, ball: FormalBall) -> bool:
        v = self.ideal(ball.point)
        return v != INF and ball.radius - self.offset > v

    def to_json(self) -> dict:
        return {"ideal": [fmt(v) for v in self.ideal.values], "offset": fmt(self.offset)}


def family(ideal: Weight, offset=0) -> DirectedBallFamily:
    ok = is_ideal(ideal)
    if not ok.ok:
        raise ValueError(f"not an ideal (witness {ok.witness}); its ball set is not directed")
    return DirectedBallFamily(ideal, offset)


def ball_leq(space: FiniteSpace, b1: FormalBall, b2: FormalBall) -> bool:
    """(x, r) ⊑ (y, s) iff d(x, y) + s <= r."""
    return add(space.d(b1.point, b2.point), b2.radius) <= b1.radius


# ---------------------------------------------------------------------------
# finite sets of balls


def _upper_candidates(space: FiniteSpace, constraints: Sequence[tuple[int, Ext]]) -> list[FormalBall]:
    """For (x_i, r_i) constraints, each y with all d(x_i, y) <= r_i gives (y, min r_i - d(x_i, y))."""
    out = []
    for y in range(len(space)):
        s = None
        for x, r in constraints:
            dxy = space.dist[x][y]
            if dxy == INF:
                s = None
                break
            v = r - dxy
            s = v if s is None or v < s else s
        if s is not None and s >= 0:
            out.append(FormalBall(space.points[y], s))
    return out


def _least(space: FiniteSpace, cands: Sequence[FormalBall]) -> FormalBall | None:
    for c in cands:
        if all(ball_leq(space, c, o) for o in cands):
            return c
    return None


def lub_finite(space: FiniteSpace, balls: Iterable[FormalBall]) -> FormalBall | None:
    balls = list(balls)
    if not balls:
        raise ValueError("lub of an empty set of balls")
    cons = [(space.idx(b.point), b.radius) for b in balls]
    return _least(space, _upper_candidates(space, cons))


def upper_bounds_finite(space: FiniteSpace, balls: Iterable[FormalBall]) -> list[FormalBall]:
    """Maximal-radius upper bound at each eligible point (every upper bound lies above one)."""
    cons = [(space.idx(b.point), b.radius) for b in balls]
    return _upper_candidates(space, cons)


# ---------------------------------------------------------------------------
# directed families on finite carriers


def family_upper_bounds(fam: DirectedBallFamily) -> list[FormalBall]:
    phi = fam.ideal
    cons = [(x, fam.offset + v) for x, v in enumerate(phi.values) if v != INF]
    return _upper_candidates(phi.space, cons)


def family_join_bruteforce(fam: DirectedBallFamily) -> FormalBall | None:
    """Least upper bound found by sweeping the derived candidates."""
    return _least(fam.ideal.space, family_upper_bounds(fam))


def family_join(fam: DirectedBallFamily) -> FormalBall | None:
    """(colim ideal, offset) when the colimit exists."""
    b = colimit_of(fam.ideal)
    return None if b is None else FormalBall(b, fam.offset)


def _leastness_failures(space: FiniteSpace, cands: Sequence[FormalBall]) -> list[dict]:
    out = []
    for c in cands:
        for o in cands:
            if not ball_leq(space, c, o):
                out.append({"candidate": c.to_json(), "not_below": o.to_json()})
                break
    return out


def default_shifts() -> list[Fraction]:
    return [Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2)]


def standardness_suite(space: FiniteSpace, battery: Sequence[DirectedBallFamily],
                       shifts: Sequence[Fraction] | None = None) -> Verdict:
    """For every family with a join: its ideal has a colimit, and the t-shifted and
    offset-0 families have joins too."""
    shifts = default_shifts() if shifts is None else shifts
    for k, fam in enumerate(battery):
        join = family_join_bruteforce(fam)
        if join is None:
            continue
        if colimit_of(fam.ideal) is None:
            return failing("standardness", {"family": k, "reason": "join without colimit",
                                            "join": join.to_json()}, size=len(battery))
        for t in shifts:
            if family_join_bruteforce(fam.shifted(t)) is None:
                return failing("standardness", {"family": k, "reason": "shifted family lacks a join",
                                                "shift": fmt(t)}, size=len(battery))
        if family_join_bruteforce(fam.normalized()) is None:
            return failing("standardness", {"family": k, "reason": "normalized family lacks a join"},
                           size=len(battery))
    return passing("standardness", False, size=len(battery))


def local_dcpo_verdict(space: FiniteSpace, battery: Sequence[DirectedBallFamily]) -> Verdict:
    """Every battery family with an upper bound must have a join."""
    for k, fam in enumerate(battery):
        ubs = family_upper_bounds(fam)
        if not ubs:
            continue
        join = _least(space, ubs)
        if join is None:
            return failing("local-dcpo", {"family": k, "upper_bound": ubs[0].to_json(),
                                          "leastness_failures": _leastness_failures(space, ubs)},
                           size=len(battery))
    return passing("local-dcpo", False, size=len(battery))


def j_algebra_verdict(space: FiniteSpace, battery: Sequence[Weight]) -> Verdict:
    """Every bounded ideal of the battery must have a colimit."""
    for k, phi in enumerate(battery):
        if not (is_ideal(phi).ok and is_bounded(phi).ok):
            raise ValueError(f"battery member {k} is not a bounded ideal")
        if colimit_of(phi) is None:
            return failing("j-algebra", {"ideal": k, "values": [fmt(v) for v in phi.values]},
                           size=len(battery))
    return passing("j-algebra", False, size=len(battery))


def local_yoneda_conditions(space: FiniteSpace, battery: Sequence[DirectedBallFamily]) -> Verdict:
    """(i) joins have radius equal to the offset; (ii) local dcpo on the battery."""
    for k, fam in enumerate(battery):
        join = family_join_bruteforce(fam)
        if join is not None and join.radius != fam.offset:
            return failing("local-yoneda", {"family": k, "join": join.to_json(),
                                            "offset": fmt(fam.offset)}, size=len(battery))
    dcpo = local_dcpo_verdict(space, battery)
    if not dcpo.passed:
        return Verdict("local-yoneda", dcpo.status, {"condition": "ii", **dcpo.witness}, dcpo.battery)
    return passing("local-yoneda", False, size=len(battery))


@dataclass(frozen=True)
class TheoremCheck:
    consistent: bool
    j_algebra: Verdict
    standard: Verdict
    local_dcpo: Verdict
    local_yoneda: Verdict


def j_algebra_theorem(space: FiniteSpace, ideals: Sequence[Weight],
                      offsets: Sequence[Fraction] | None = None) -> TheoremCheck:
    """Both sides of "J-algebra iff standard and BX a local dcpo" on one shared battery."""
    offsets = default_shifts() if offsets is None else offsets
    bounded = [phi for phi in ideals if is_ideal(phi).ok and is_bounded(phi).ok]
    fams = [DirectedBallFamily(phi, t) for phi in ideals if is_ideal(phi).ok for t in offsets]
    ja = j_algebra_verdict(space, bounded)
    st = standardness_suite(space, fams)
    ld = local_dcpo_verdict(space, fams)
    ly = local_yoneda_conditions(space, fams)
    right = st.passed and ld.passed
    return TheoremCheck(ja.passed == right and ly.passed == ja.passed, ja, st, ld, ly)


# ---------------------------------------------------------------------------
# way-below


@dataclass(frozen=True)
class WaybelowTable:
    space: FiniteSpace
    values: tuple[tuple[Ext, ...], ...]

    def __call__(self, x: Point, y: Point) -> Ext:
        return self.values[self.space.idx(x)][self.space.idx(y)]


def distance_table(space: FiniteSpace) -> WaybelowTable:
    return WaybelowTable(space, space.dist)


def default_radii() -> list[Fraction]:
    return [Fraction(k, 2) for k in range(0, 7)]


def representable_battery(space: FiniteSpace, offsets: Sequence[Fraction]) -> list[DirectedBallFamily]:
    return [DirectedBallFamily(phi, t) for phi in representables(space) for t in offsets]


def _dominated_by_member(fam: DirectedBallFamily, x: int, r: Fraction) -> bool:
    """Some member (z, offset + t), t > ideal(z), lies above (x, r)."""
    space = fam.ideal.space
    for z, v in enumerate(fam.ideal.values):
        if v == INF:
            continue
        reach = add(space.dist[x][z], v)
        if reach != INF and reach + fam.offset < r:
            return True
    return False


def waybelow_verify(space: FiniteSpace, w: WaybelowTable,
                    battery: Sequence[DirectedBallFamily] | None = None,
                    radii: Sequence[Fraction] | None = None) -> Verdict:
    """Battery-relative check of (x, r) << (y, s) iff r > s + w(x, y).

    Claimed pairs must be sound against every battery family whose join is above
    (y, s); each unclaimed pair must be refuted by some battery family.
    """
    radii = default_radii() if radii is None else radii
    battery = representable_battery(space, radii) if battery is None else battery
    joins = [family_join_bruteforce(f) for f in battery]
    n = len(space)
    info = {"size": len(battery), "radii": [fmt(r) for r in radii]}
    for x in range(n):
        for y in range(n):
            wxy = w.values[x][y]
            for r in radii:
                for s in radii:
                    yb = FormalBall(space.points[y], s)
                    above = [k for k, j in enumerate(joins) if j is not None and ball_leq(space, yb, j)]
                    claimed = r > add(s, wxy)
                    bad = [k for k in above if not _dominated_by_member(battery[k], x, r)]
                    if claimed and bad:
                        return failing("waybelow", {
                            "kind": "unsound-claim", "x": space.points[x], "r": fmt(r),
                            "y": space.points[y], "s": fmt(s), "family": battery[bad[0]].to_json(),
                        }, **info)
                    if not claimed and not bad:
                        return failing("waybelow", {
                            "kind": "missing-counterexample", "x": space.points[x], "r": fmt(r),
                            "y": space.points[y], "s": fmt(s),
                        }, **info)
    return passing("waybelow", False, **info)


def j_below_estimate(space: FiniteSpace, battery: Sequence[Weight]) -> WaybelowTable:
    """max over the battery of phi(x) ⊖ d(y, colim phi); a lower bound of the J-below distributor."""
    n = len(space)
    table = [[ZERO] * n for _ in range(n)]
    for phi in battery:
        b = colimit_of(phi)
        if b is None:
            raise ValueError("battery ideals must have colimits")
        bi = space.idx(b)
        for x in range(n):
            for y in range(n):
                v = tminus(phi.values[x], space.dist[y][bi])
                if v > table[x][y]:
                    table[x][y] = v
    return WaybelowTable(space, tuple(tuple(r) for r in table))


def interpolation_check(w: WaybelowTable):
    """w ∘ w == w in min-plus; returns (True, None) or (False, witness)."""
    n = len(w.space)
    v = w.values
    for x in range(n):
        for y in range(n):
            comp = min(add(v[z][y], v[x][z]) for z in range(n))
            if comp != v[x][y]:
                return False, {"x": w.space.points[x], "y": w.space.points[y],
                               "composite": fmt(comp), "value": fmt(v[x][y])}
    return True, None


# ---------------------------------------------------------------------------
# streamed refutations


def streamed_family_refutation(space: StreamedSpace, ideal: ClosedFormIdeal, offset: Fraction,
                               horizon: int) -> Verdict:
    """Local-dcpo refutation for a closed-form family on a streamed space.

    Every enumerated point y within the horizon with s_y >= 0 gives the upper
    bound (y, s_y).  Each such candidate fails leastness: a later point y' is an
    upper bound (y', s_y') with (y, s_y) not below it.  The witness lists, per
    candidate, the exact values replay needs.
    """
    offset = ext(offset)
    pts = space.points(horizon)
    cands = []
    for y in pts:
        s = ideal.upper_radius(y, offset)
        if s >= 0:
            cands.append((y, s))
    info = {"horizon": horizon, "space": space.name, "ideal": ideal.name, "offset": fmt(offset)}
    if not cands:
        return Verdict("local-dcpo", PASSED_AT_HORIZON, None, info)
    failures = []
    for y, s in cands:
        _, yp = qlo_point_above(space, y)
        sp = ideal.upper_radius(yp, offset)
        if sp < 0:
            return Verdict("local-dcpo", PASSED_AT_HORIZON, {"unresolved": y}, info)
        lhs = add(space.dist(y, yp), sp)
        if lhs <= s:
            return Verdict("local-dcpo", PASSED_AT_HORIZON, {"join_candidate": y}, info)
        failures.append({"candidate": {"point": y, "radius": fmt(s)},
                         "not_below": {"point": yp, "radius": fmt(sp)},
                         "d_plus_s": fmt(lhs)})
    y0, s0 = cands[0]
    return failing("local-dcpo", {"upper_bound": {"point": y0, "radius": fmt(s0)},
                                  "leastness_failures": failures}, **info)


def streamed_colimit_refutation(space: StreamedSpace, ideal: ClosedFormIdeal, horizon: int) -> Verdict:
    """No enumerated point is a colimit: at y = b, d(b, b) = 0 but an enumerated x above gives
    d(x, b) ⊖ ideal(x) > 0 <= rho(ideal, d(-, b))."""
    pts = space.points(horizon)
    info = {"horizon": horizon, "space": space.name, "ideal": ideal.name}
    anchor = pts[0]
    bound = ideal.sup_gap(anchor)
    failures = []
    for b in pts:
        _, x = qlo_point_above(space, b)
        gap = tminus(space.dist(x, b), ideal.value(x))
        if not gap > space.dist(b, b):
            return Verdict("colimit", PASSED_AT_HORIZON, {"candidate": b}, info)
        failures.append({"candidate": b, "test_point": b, "d_b_y": fmt(space.dist(b, b)),
                         "lower_bound_x": x, "lower_bound": fmt(gap),
                         "rho": fmt(ideal.sup_gap(b))})
    return failing("colimit", {"bounded_by": {"anchor": anchor, "radius": fmt(bound)},
                               "candidates": failures}, **info)
