"""Replayable checks.

Every check takes a plain JSON input document and returns a :class:`Verdict`.
Suites build their instances through the same functions, so a stored record
``{"check", "input", "verdict"}`` can be re-executed verbatim by ``replay``.
"""
from __future__ import annotations

from typing import Callable

from .. import io
from ..distributors import (adjunction_check, adjunction_rho_pair, compose, distributor, identity,
                            nonexpansive_map, representable_naturality)
from ..formal_balls import (DirectedBallFamily, FormalBall, WaybelowTable, distance_table, family_join,
                            family_join_bruteforce, interpolation_check, j_algebra_theorem,
                            j_below_estimate, lub_finite, streamed_colimit_refutation,
                            streamed_family_refutation, waybelow_verify)
from ..ideals import NetPresentation, bounded_net_check, is_ideal, is_representable
from ..monadics import WeightClass, battery, closure, is_closed_weight, kz_string_check, saturation_check
from ..numerics import fmt, parse
from ..streamed import CLOSED_FORM_IDEALS, NETS, qlo_sup_into, streamed
from ..verdict import Verdict, failing, passing
from ..weights import Weight, leq, rho, weight, yoneda
from .oracles import MAX_ORACLE_POINTS, exhaustive_j_below, grid_lub_oracle, ideal_gate

RECORD_FORMAT = 1


def _space(inp: dict, key: str = "space"):
    return io.finite_space_from_json(inp[key], key)


def _w(space, vals) -> Weight:
    return weight(space, [parse(v) for v in vals])


def _vals(phi: Weight) -> list[str]:
    return [fmt(v) for v in phi.values]


def _table(rows) -> list[list[str]]:
    return [[fmt(v) for v in r] for r in rows]


# ---------------------------------------------------------------------------


def yoneda_lemma(inp: dict) -> Verdict:
    space = _space(inp)
    phi = _w(space, inp["phi"])
    for x in range(len(space)):
        lhs = rho(yoneda(space, x), phi)
        if lhs != phi.values[x]:
            return failing("yoneda-lemma", {"x": space.points[x], "rho": fmt(lhs), "phi_x": fmt(phi.values[x])})
    return passing("yoneda-lemma", True, points=len(space))


def yoneda_isometry(inp: dict) -> Verdict:
    space = _space(inp)
    reps = [yoneda(space, x) for x in range(len(space))]
    for x in range(len(space)):
        for y in range(len(space)):
            v = rho(reps[x], reps[y])
            if v != space.dist[x][y]:
                return failing("yoneda-isometry", {"x": space.points[x], "y": space.points[y],
                                                   "rho": fmt(v), "d": fmt(space.dist[x][y])})
    return passing("yoneda-isometry", True, points=len(space))


def distributor_laws(inp: dict) -> Verdict:
    X, Y, Z, W = (io.finite_space_from_json(inp["spaces"][k], k) for k in "XYZW")
    phi = distributor(X, Y, [[parse(v) for v in r] for r in inp["phi"]])
    psi = distributor(Y, Z, [[parse(v) for v in r] for r in inp["psi"]])
    chi = distributor(Z, W, [[parse(v) for v in r] for r in inp["chi"]])
    f = nonexpansive_map(X, Y, [Y.points[i] for i in inp["map"]])

    def bad(law: str, **extra) -> Verdict:
        return failing("distributor-laws", {"law": law, **extra})

    left = compose(chi, compose(psi, phi))
    right = compose(compose(chi, psi), phi)
    if left.values != right.values:
        return bad("associativity", left=_table(left.values), right=_table(right.values))
    if compose(identity(Y), phi).values != phi.values:
        return bad("left-unit")
    if compose(phi, identity(X)).values != phi.values:
        return bad("right-unit")
    adj = adjunction_check(f)
    if not adj.holds:
        kind, a, b, lhs, rhs = adj.violation
        return bad(f"graph-cograph-{kind}", a=a, b=b, lhs=fmt(lhs), rhs=fmt(rhs))
    for i, vals in enumerate(inp["weights_x"]):
        u = _w(X, vals)
        for j, wv in enumerate(inp["weights_y"]):
            v = _w(Y, wv)
            lhs, rhs = adjunction_rho_pair(f, u, v)
            if lhs != rhs:
                return bad("pushforward-pullback", phi=i, psi=j, lhs=fmt(lhs), rhs=fmt(rhs))
    for x in X.points:
        if not representable_naturality(f, x):
            return bad("representable-naturality", x=x)
    return passing("distributor-laws", True)


def ideal_oracle_gate(inp: dict) -> Verdict:
    space = _space(inp)
    grid = [parse(v) for v in inp.get("grid", ["0", "1/2", "1", "2", "inf"])]
    g = ideal_gate(space, grid)
    info = {"candidates": g["candidates"], "ideals": g["ideals"]}
    if g["disagreement"] is not None:
        dis = dict(g["disagreement"])
        dis["values"] = [fmt(v) for v in dis["values"]]
        return failing("ideal-oracle-gate", {"kind": "disagreement", **dis}, **info)
    for phi in g["ideals_found"]:
        if is_representable(phi) is None:
            return failing("ideal-oracle-gate", {"kind": "non-representable-ideal", "values": _vals(phi)}, **info)
    found = {phi.values for phi in g["ideals_found"]}
    for x in range(len(space)):
        if yoneda(space, x).values not in found:
            return failing("ideal-oracle-gate", {"kind": "representable-missed", "x": space.points[x]}, **info)
    return passing("ideal-oracle-gate", True, **info)


def ball_lub(inp: dict) -> Verdict:
    space = _space(inp)
    balls = [io.ball_from_json(b, f"balls[{i}]") for i, b in enumerate(inp["balls"])]
    got = lub_finite(space, balls)
    ref = grid_lub_oracle(space, balls)
    if got != ref:
        return failing("ball-lub", {"lub": None if got is None else got.to_json(),
                                    "oracle": None if ref is None else ref.to_json()})
    return passing("ball-lub", True, balls=len(balls))


def family_coherence(inp: dict) -> Verdict:
    space = _space(inp)
    phi = _w(space, inp["ideal"])
    if not is_ideal(phi).ok:
        raise ValueError("family ideal is not an ideal")
    fam = DirectedBallFamily(phi, parse(inp["offset"]))
    brute = family_join_bruteforce(fam)
    via = family_join(fam)
    if brute != via:
        return failing("family-join", {"kind": "routes-differ",
                                       "bruteforce": None if brute is None else brute.to_json(),
                                       "colimit": None if via is None else via.to_json()})
    if brute is not None and brute.radius != fam.offset:
        return failing("family-join", {"kind": "radius", "join": brute.to_json(), "offset": fmt(fam.offset)})
    for t in inp.get("shifts", []):
        t = parse(t)
        sj = family_join_bruteforce(fam.shifted(t))
        want = None if brute is None else FormalBall(brute.point, brute.radius + t)
        if sj != want:
            return failing("family-join", {"kind": "shift", "shift": fmt(t),
                                           "shifted_join": None if sj is None else sj.to_json()})
    return passing("family-join", True)


def j_algebra_consistency(inp: dict) -> Verdict:
    space = _space(inp)
    ideals = [_w(space, v) for v in inp["ideals"]]
    offsets = [parse(t) for t in inp["offsets"]]
    tc = j_algebra_theorem(space, ideals, offsets)
    info = {"ideals": len(ideals), "offsets": inp["offsets"]}
    if not tc.consistent:
        return failing("j-algebra-theorem", {
            "j_algebra": tc.j_algebra.to_dict(), "standard": tc.standard.to_dict(),
            "local_dcpo": tc.local_dcpo.to_dict(), "local_yoneda": tc.local_yoneda.to_dict()}, **info)
    return passing("j-algebra-theorem", False, j_algebra=tc.j_algebra.status, **info)


def saturation(inp: dict) -> Verdict:
    base = _space(inp)
    batt = battery(base, [_w(base, v) for v in inp["members"]])
    Phis = [_w(batt.space, v) for v in inp["Phis"]]
    return saturation_check(WeightClass(inp["class"]), batt, Phis)


def kz_string(inp: dict) -> Verdict:
    base = _space(inp)
    batt = battery(base, [_w(base, v) for v in inp["members"]])
    Phis = [_w(batt.space, v) for v in inp["Phis"]]
    probes = [_w(base, v) for v in inp["probes"]]
    return kz_string_check(batt, Phis, probes)


def _wtable(space, inp: dict) -> WaybelowTable:
    if inp.get("w") is None:
        return distance_table(space)
    return WaybelowTable(space, tuple(tuple(parse(v) for v in r) for r in inp["w"]))


def waybelow(inp: dict) -> Verdict:
    space = _space(inp)
    radii = [parse(r) for r in inp["radii"]] if "radii" in inp else None
    return waybelow_verify(space, _wtable(space, inp), radii=radii)


def interpolation(inp: dict) -> Verdict:
    space = _space(inp)
    ok, wit = interpolation_check(_wtable(space, inp))
    return passing("interpolation", True) if ok else failing("interpolation", wit)


def j_below(inp: dict) -> Verdict:
    """The estimate over a generated battery stays below the exhaustive value,
    reaches it over the oracle battery, and the exhaustive value equals d."""
    space = _space(inp)
    if len(space) > MAX_ORACLE_POINTS:
        raise ValueError(f"j-below needs at most {MAX_ORACLE_POINTS} points")
    exact, oracle_ideals = exhaustive_j_below(space)
    est = j_below_estimate(space, [_w(space, v) for v in inp["battery"]]).values
    n = len(space)
    for x in range(n):
        for y in range(n):
            if est[x][y] > exact[x][y]:
                return failing("j-below", {"kind": "exceeds", "x": space.points[x], "y": space.points[y],
                                           "estimate": fmt(est[x][y]), "exhaustive": fmt(exact[x][y])})
    full = j_below_estimate(space, oracle_ideals).values
    if full != exact:
        return failing("j-below", {"kind": "oracle-battery-short", "estimate": _table(full),
                                   "exhaustive": _table(exact)})
    if exact != space.dist:
        return failing("j-below", {"kind": "differs-from-d", "exhaustive": _table(exact)})
    return passing("j-below", True, battery=len(inp["battery"]), oracle_ideals=len(oracle_ideals))


def closure_laws(inp: dict) -> Verdict:
    space = _space(inp)
    phi = _w(space, inp["phi"])
    ideals = [_w(space, v) for v in inp["ideals"]]
    cap = int(inp.get("cap", 64))
    c = closure(phi, ideals, cap)  # NonConvergence propagates
    if not leq(c, phi):
        return failing("closure-laws", {"law": "deflation", "closure": _vals(c)})
    again = closure(c, ideals, cap)
    if again.values != c.values:
        return failing("closure-laws", {"law": "idempotence", "closure": _vals(c), "again": _vals(again)})
    closed = is_closed_weight(c, ideals)
    if not closed.passed:
        return failing("closure-laws", {"law": "closedness", "closure": _vals(c), **closed.witness})
    return passing("closure-laws", False, ideals=len(ideals), cap=cap)


def qlo_j_algebra(inp: dict) -> Verdict:
    """The net x_n = 1 - 1/(n+1) generates the zero ideal: bounded, but no enumerated colimit."""
    horizon = int(inp["horizon"])
    space = streamed("qlo")
    ideal = CLOSED_FORM_IDEALS[("qlo", "zero")]
    _, net_fn = NETS[ideal.net]
    net = NetPresentation(space, (), net_fn, ideal.net)
    bounded = bounded_net_check(net, horizon, sup_into=qlo_sup_into)
    info = {"horizon": horizon, "space": "qlo", "ideal": ideal.name}
    if not bounded.bounded:
        return Verdict("j-algebra", "passed_at_horizon", {"unbounded_at": bounded.witness}, info)
    col = streamed_colimit_refutation(space, ideal, horizon)
    if col.status != "refuted_at_horizon":
        return Verdict("j-algebra", col.status, col.witness, info)
    return failing("j-algebra", {"bounded_ideal": {"anchor": bounded.anchor, "radius": fmt(bounded.radius)},
                                 "no_colimit": col.witness}, **info)


def qlo_local_dcpo(inp: dict) -> Verdict:
    ideal = CLOSED_FORM_IDEALS[("qlo", inp.get("ideal", "zero"))]
    return streamed_family_refutation(streamed("qlo"), ideal, parse(inp["offset"]), int(inp["horizon"]))


CHECKS: dict[str, Callable[[dict], Verdict]] = {
    "yoneda-lemma": yoneda_lemma,
    "yoneda-isometry": yoneda_isometry,
    "distributor-laws": distributor_laws,
    "ideal-oracle-gate": ideal_oracle_gate,
    "ball-lub": ball_lub,
    "family-join": family_coherence,
    "j-algebra-theorem": j_algebra_consistency,
    "saturation": saturation,
    "kz-string": kz_string,
    "waybelow": waybelow,
    "interpolation": interpolation,
    "j-below": j_below,
    "closure-laws": closure_laws,
    "qlo-j-algebra": qlo_j_algebra,
    "qlo-local-dcpo": qlo_local_dcpo,
}


class UnknownCheck(KeyError):
    pass


def run_check(name: str, inp: dict) -> Verdict:
    try:
        fn = CHECKS[name]
    except KeyError:
        raise UnknownCheck(f"unknown check {name!r}") from None
    return fn(inp)


def record(name: str, inp: dict, verdict: Verdict) -> dict:
    return {"format": RECORD_FORMAT, "check": name, "input": inp, "verdict": verdict.to_dict()}

