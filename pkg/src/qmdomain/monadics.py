"""Classes of weights as submonads, checked on finite batteries.

The space of all weights of X is infinite even when X is finite, so every law
here is verified on a *battery*: a finite set of weights of X, deduplicated and
metrised by rho, which is itself a finite quasi-metric space.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .distributors import NonExpansiveMap, pushforward
from .ideals import colimit_of, is_bounded, is_ideal, weighted_colimit
from .numerics import INF, ZERO, Ext, add, fmt, tminus
from .space import FiniteSpace, Point, axiom_violation, same_space
from .verdict import Verdict, failing, passing
from .weights import Weight, envelope, is_weight, rho, rho_values, shift, yoneda


class WeightClass(str, Enum):
    ALL = "all"
    IDEALS = "ideals"
    BOUNDED = "bounded"
    BOUNDED_IDEALS = "bounded-ideals"
    BALLS = "balls"


def ball_form(phi: Weight):
    """(r, x) with phi = r + d(-, x) and r > 0, or None."""
    space = phi.space
    for x in range(len(space)):
        col = [row[x] for row in space.dist]
        r = None
        for v, d in zip(phi.values, col):
            if d == INF:
                if v != INF:
                    break
                continue
            if v == INF:
                break
            diff = v - d
            if r is None:
                r = diff
            elif diff != r:
                break
        else:
            if r is not None and r > 0:
                return r, space.points[x]
    return None


def in_class(tag: WeightClass, phi: Weight) -> bool:
    tag = WeightClass(tag)
    if tag is WeightClass.ALL:
        return True
    if tag is WeightClass.IDEALS:
        return is_ideal(phi).ok
    if tag is WeightClass.BOUNDED:
        return is_bounded(phi).ok
    if tag is WeightClass.BOUNDED_IDEALS:
        return is_ideal(phi).ok and is_bounded(phi).ok
    return ball_form(phi) is not None


class BatteryError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Battery:
    """Members are weights of ``base``; ``space`` is (members, rho) as a finite space."""

    base: FiniteSpace
    members: tuple[Weight, ...]
    space: FiniteSpace

    def index_of(self, phi: Weight) -> int:
        return self.members.index(phi)

    def __len__(self) -> int:
        return len(self.members)


def battery(base: FiniteSpace, members: Iterable[Weight]) -> Battery:
    uniq: list[Weight] = []
    seen = set()
    for m in members:
        same_space(base, m.space)
        if m.values not in seen:
            seen.add(m.values)
            uniq.append(m)
    if not uniq:
        raise BatteryError("a battery needs at least one member")
    labels = tuple(f"m{i}" for i in range(len(uniq)))
    table = tuple(tuple(rho(a, b) for b in uniq) for a in uniq)
    bad = axiom_violation(labels, table)
    if bad is not None:
        raise BatteryError(f"battery does not form a quasi-metric space: {bad}")
    return Battery(base, tuple(uniq), FiniteSpace(labels, table))


def unit(space: FiniteSpace, x: Point) -> Weight:
    return yoneda(space, x)


def battery_unit(batt: Battery, phi: Weight) -> Weight:
    """y_batt(phi) = rho(-, phi) on the members."""
    return yoneda(batt.space, batt.index_of(phi))


def mult(batt: Battery, Phi: Weight) -> Weight:
    """min over members of Phi(member) + member, pointwise."""
    same_space(batt.space, Phi.space)
    if not is_weight(batt.space, Phi.values):
        raise ValueError("Phi is not a weight of the battery")
    n = len(batt.base)
    vals = [INF] * n
    for coeff, m in zip(Phi.values, batt.members):
        if coeff == INF:
            continue
        for x in range(n):
            v = add(coeff, m.values[x])
            if v < vals[x]:
                vals[x] = v
    return Weight(batt.base, tuple(vals))


def saturation_check(tag: WeightClass, batt: Battery, Phis: Iterable[Weight]) -> Verdict:
    """mult(Phi) stays in the class for every class-member Phi over a class battery."""
    tag = WeightClass(tag)
    for k, m in enumerate(batt.members):
        if not in_class(tag, m):
            raise ValueError(f"battery member {k} is not in class {tag.value}")
    tried = 0
    for Phi in Phis:
        if not in_class(tag, Phi):
            continue
        tried += 1
        out = mult(batt, Phi)
        if not in_class(tag, out):
            return failing(f"saturation[{tag.value}]",
                           {"Phi": [fmt(v) for v in Phi.values], "mult": [fmt(v) for v in out.values]},
                           size=len(batt), trials=tried)
    return passing(f"saturation[{tag.value}]", False, size=len(batt), trials=tried)


def unit_pushforward(batt: Battery, phi: Weight) -> Weight:
    """𝒯y(phi) on the battery: Psi(psi) = min_x phi(x) + rho(psi, d(-, x))."""
    n = len(batt.base)
    reps = [yoneda(batt.base, x) for x in range(n)]
    return Weight(batt.space, tuple(
        min(add(phi.values[x], rho(psi, reps[x])) for x in range(n)) for psi in batt.members
    ))


def kz_string_check(batt: Battery, Phis: Iterable[Weight], probes: Iterable[Weight],
                    mult_fn: Callable[[Battery, Weight], Weight] = mult) -> Verdict:
    """Both adjunctions of the string 𝒯y ⊣ m ⊣ y as exact rho-equalities.

    m ⊣ y:   rho(m(Phi), phi) == rho_batt(Phi, y_batt(phi))     for members phi
    𝒯y ⊣ m:  rho_batt(𝒯y(phi), Phi) == rho(phi, m(Phi))        for probe weights phi
    The second needs every representable in the battery.
    """
    reps = {yoneda(batt.base, x).values for x in range(len(batt.base))}
    if not reps <= {m.values for m in batt.members}:
        raise BatteryError("the battery must contain every representable weight")
    probes = list(probes)
    count = 0
    for Phi in Phis:
        m = mult_fn(batt, Phi)
        for k, phi in enumerate(batt.members):
            lhs = rho(m, phi)
            rhs = rho_values(Phi.values, [row[k] for row in batt.space.dist])
            count += 1
            if lhs != rhs:
                return failing("kz-string", {"law": "m -| y", "Phi": [fmt(v) for v in Phi.values],
                                             "member": k, "lhs": fmt(lhs), "rhs": fmt(rhs)},
                               size=len(batt), trials=count)
        for phi in probes:
            lhs = rho(unit_pushforward(batt, phi), Phi)
            rhs = rho(phi, m)
            count += 1
            if lhs != rhs:
                return failing("kz-string", {"law": "Ty -| m", "Phi": [fmt(v) for v in Phi.values],
                                             "phi": [fmt(v) for v in phi.values],
                                             "lhs": fmt(lhs), "rhs": fmt(rhs)},
                               size=len(batt), trials=count)
    return passing("kz-string", False, size=len(batt), trials=count)


# ---------------------------------------------------------------------------
# closed weights and closure


def _with_colimits(ideals: Sequence[Weight]) -> list[tuple[Weight, int]]:
    out = []
    for psi in ideals:
        b = colimit_of(psi)
        if b is not None:
            out.append((psi, psi.space.idx(b)))
    return out


def is_closed_weight(phi: Weight, ideals: Sequence[Weight]) -> Verdict:
    """rho(psi, phi) >= phi(colim psi) for every battery ideal psi that has a colimit."""
    for k, (psi, c) in enumerate(_with_colimits(ideals)):
        lhs = rho(psi, phi)
        if lhs < phi.values[c]:
            return failing("closed", {"psi": k, "rho": fmt(lhs), "value_at_colimit": fmt(phi.values[c])},
                           size=len(ideals))
    return passing("closed", False, size=len(ideals))


class NonConvergence(RuntimeError):
    def __init__(self, cap: int, last: Weight):
        self.cap, self.last = cap, last
        super().__init__(f"closure did not converge within {cap} rounds")


def closure(phi: Weight, ideals: Sequence[Weight], cap: int = 64) -> Weight:
    """Pointwise-largest battery-closed weight below phi.

    Each round lowers the current value at every colim psi to rho(psi, current),
    then re-envelopes; stops at a fixpoint or raises :class:`NonConvergence`.
    """
    pairs = _with_colimits(ideals)
    cur = phi
    for _ in range(cap + 1):
        vals = list(cur.values)
        for psi, c in pairs:
            r = rho_values(psi.values, vals)
            if r < vals[c]:
                vals[c] = r
        nxt = envelope(cur.space, vals)
        if nxt.values == cur.values:
            return cur
        cur = nxt
    raise NonConvergence(cap, cur)


def kappa_iterate(base: FiniteSpace, tag: WeightClass, gen: Callable[[FiniteSpace], Iterable[Weight]],
                  ideals: Sequence[Weight] | None = None, rounds: int = 8):
    """Grow a battery from the representables by adjoining closures of mult-images.

    ``gen(space)`` supplies candidate weights of the current battery space; those
    in class ``tag`` are pushed through mult and then closed against ``ideals``
    (defaulting to the base representables).  Returns (battery, per-round sizes).
    """
    tag = WeightClass(tag)
    ideals = list(ideals) if ideals is not None else [yoneda(base, x) for x in range(len(base))]
    batt = battery(base, [yoneda(base, x) for x in range(len(base))])
    sizes = [len(batt)]
    for _ in range(rounds):
        new = list(batt.members)
        for Phi in gen(batt.space):
            if in_class(tag, Phi):
                new.append(closure(mult(batt, Phi), ideals))
        nxt = battery(base, new)
        if len(nxt) == len(batt):
            break
        batt = nxt
        sizes.append(len(batt))
    return batt, sizes


@dataclass(frozen=True)
class Reflection:
    images: tuple[Weight, ...]       # f̄(member) as weights of Y
    points: tuple[str | None, ...]   # representing point in Y, when representable
    factorizes: bool                 # f(x) == f̄(t(x)) for every x


def preserves_colimits(f: NonExpansiveMap, ideals: Sequence[Weight]):
    """f(colim phi) is the colimit of f weighted by phi, for battery ideals with colimits."""
    for k, phi in enumerate(ideals):
        b = colimit_of(phi)
        if b is None:
            continue
        if weighted_colimit(f, phi) != f(b):
            return False, k
    return True, None


def reflect_map(f: NonExpansiveMap, batt: Battery, ideals_x: Sequence[Weight],
                ideals_y: Sequence[Weight] | None = None) -> Reflection:
    """f̄(phi) = c(f→(phi)) on battery members; checks f = f̄ ∘ t on points."""
    ok, k = preserves_colimits(f, ideals_x)
    if not ok:
        raise ValueError(f"f does not preserve the colimit of battery ideal {k}")
    Y = f.target
    ideals_y = list(ideals_y) if ideals_y is not None else [yoneda(Y, y) for y in range(len(Y))]
    images = tuple(closure(pushforward(f, m), ideals_y) for m in batt.members)
    reps = {yoneda(Y, y).values: Y.points[y] for y in range(len(Y))}
    points = tuple(reps.get(w.values) for w in images)
    fact = True
    for x in range(len(f.source)):
        k = batt.index_of(yoneda(f.source, x))
        if points[k] != f(x):
            fact = False
    return Reflection(images, points, fact)


def t_map(batt: Battery) -> NonExpansiveMap:
    """t: X -> (battery, rho), x -> d(-, x)."""
    base = batt.base
    return NonExpansiveMap(base, batt.space,
                           tuple(batt.index_of(yoneda(base, x)) for x in range(len(base))))


def ball_rho_closed_form(space: FiniteSpace, r, x: Point, s, y: Point) -> tuple[Ext, Ext]:
    """(rho(r + d(-,x), s + d(-,y)), (s + d(x,y)) ⊖ r)."""
    lhs = rho(shift(yoneda(space, x), r), shift(yoneda(space, y), s))
    return lhs, tminus(add(Fraction(s), space.d(x, y)), Fraction(r))
