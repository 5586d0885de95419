from fractions import Fraction

import pytest

from qmdomain.formal_balls import (DirectedBallFamily, FormalBall, InfiniteRadius, WaybelowTable, ball_leq,
                                   distance_table, family, family_join, family_join_bruteforce,
                                   interpolation_check, j_algebra_verdict, j_below_estimate,
                                   local_dcpo_verdict, local_yoneda_conditions, lub_finite,
                                   representable_battery, default_shifts, standardness_suite,
                                   streamed_colimit_refutation, streamed_family_refutation, waybelow_verify)
from qmdomain.numerics import INF
from qmdomain.space import singleton, validate
from qmdomain.streamed import QLO_ZERO_IDEAL, qlo
from qmdomain.weights import representables, weight, yoneda

B = FormalBall


def test_ball_order(S2):
    assert ball_leq(S2, B("a", 3), B("b", 1))
    assert ball_leq(S2, B("a", 1), B("a", 1))
    assert not ball_leq(S2, B("b", 1), B("a", 1))


def test_infinite_radius_rejected():
    with pytest.raises(InfiniteRadius):
        B("a", INF)


def test_lub_finite(S2):
    assert lub_finite(S2, [B("a", 2), B("b", 1)]) == B("b", 1)
    assert lub_finite(S2, [B("a", Fraction(3, 2))]) == B("a", Fraction(3, 2))
    apart = validate("ab", [[0, INF], [INF, 0]])
    assert lub_finite(apart, [B("a", 1), B("b", 1)]) is None


def test_finite_directed_set_join_is_its_maximum(S2):
    chain = [B("a", 3), B("b", 1), B("b", Fraction(1, 2))]
    assert lub_finite(S2, chain) == chain[-1]


def test_family_join(S2, S2z):
    assert family_join(family(yoneda(S2, "b"), 0)) == B("b", 0)
    fam = family(weight(S2z, [0, 0]), Fraction(1, 2))
    assert family_join(fam) == B("b", Fraction(1, 2))
    assert family_join_bruteforce(fam) == B("b", Fraction(1, 2))


def test_family_requires_ideal(S2):
    with pytest.raises(ValueError):
        family(weight(S2, [0, 0]), 0)


def test_verdicts_on_S2(S2, star):
    ideals = [w for w in representables(S2)]
    fams = [DirectedBallFamily(phi, t) for phi in ideals for t in default_shifts()]
    assert standardness_suite(S2, fams).passed
    assert local_dcpo_verdict(S2, fams).passed
    assert local_dcpo_verdict(S2, []).passed
    assert j_algebra_verdict(S2, ideals).passed
    assert j_algebra_verdict(star, representables(star)).passed
    ly = local_yoneda_conditions(S2, fams)
    assert ly.passed
    for fam in fams:
        assert family_join_bruteforce(fam).radius == fam.offset


def test_waybelow(S2):
    assert waybelow_verify(S2, distance_table(S2)).passed
    bad = WaybelowTable(S2, ((0, 0), (2, 0)))
    v = waybelow_verify(S2, bad)
    assert not v.passed
    assert v.witness["kind"] == "unsound-claim" and v.witness["x"] == "a" and v.witness["y"] == "b"
    assert v.witness["family"]["ideal"] == ["1", "0"]


def test_j_below_estimate(S2):
    w = j_below_estimate(S2, representables(S2))
    assert w("a", "b") == 1
    assert w.values == S2.dist
    only_a = j_below_estimate(S2, [yoneda(S2, "a")])
    assert only_a("a", "a") == 0


def test_interpolation(S2):
    assert interpolation_check(distance_table(S2)) == (True, None)
    assert interpolation_check(WaybelowTable(S2, ((0, 0), (0, 0))))[0]
    three = validate("abc", [[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    broken = WaybelowTable(three, ((0, 1, 5), (1, 0, 1), (2, 1, 0)))
    ok, wit = interpolation_check(broken)
    assert not ok and wit["x"] == "a" and wit["y"] == "c"


def test_qlo_refutations_at_horizon_32():
    sp = qlo()
    fam = streamed_family_refutation(sp, QLO_ZERO_IDEAL, Fraction(1), 32)
    assert not fam.passed
    assert len(fam.witness["leastness_failures"]) == 32
    col = streamed_colimit_refutation(sp, QLO_ZERO_IDEAL, 32)
    assert not col.passed
    assert col.witness["bounded_by"] == {"anchor": "0", "radius": "1"}
    assert len(col.witness["candidates"]) == 32
