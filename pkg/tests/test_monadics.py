from fractions import Fraction

import pytest

from qmdomain.distributors import identity_map, nonexpansive_map
from qmdomain.monadics import (BatteryError, NonConvergence, WeightClass, ball_form, ball_rho_closed_form,
                               battery, battery_unit, closure, in_class, is_closed_weight, kappa_iterate,
                               kz_string_check, mult, reflect_map, saturation_check, unit)
from qmdomain.numerics import INF
from qmdomain.space import singleton, validate
from qmdomain.weights import Weight, representables, shift, sup_of, weight, yoneda


def _reps(space):
    return battery(space, representables(space))


def test_unit(S2, star):
    assert unit(S2, "a").values == (0, 2)
    assert unit(star, "*").values == (0,)
    y = unit(S2, "a")
    for tag in (WeightClass.ALL, WeightClass.IDEALS, WeightClass.BOUNDED, WeightClass.BOUNDED_IDEALS):
        assert in_class(tag, y)
    # the degenerate radius 0 is excluded from ball weights
    assert not in_class(WeightClass.BALLS, y)
    assert ball_form(shift(y, Fraction(1, 2))) == (Fraction(1, 2), "a")


def test_mult(S2):
    batt = _reps(S2)
    assert batt.space.dist == S2.dist
    assert mult(batt, weight(batt.space, [0, 2])) == yoneda(S2, "a")
    for m in batt.members:
        assert mult(batt, battery_unit(batt, m)) == m
    zero = weight(batt.space, [0, 0])
    assert mult(batt, zero).values == (0, 0)


def test_saturation(S2):
    batt = _reps(S2)
    Phis = representables(batt.space)
    assert saturation_check(WeightClass.BOUNDED_IDEALS, batt, Phis).passed
    assert saturation_check(WeightClass.ALL, batt, [weight(batt.space, [0, 0])]).passed
    balls = battery(S2, [shift(yoneda(S2, x), 1) for x in S2.points])
    v = saturation_check(WeightClass.BALLS, balls, [shift(yoneda(balls.space, 0), Fraction(1, 2))])
    assert v.passed
    out = mult(balls, shift(yoneda(balls.space, 0), Fraction(1, 2)))
    assert ball_form(out) == (Fraction(3, 2), "a")


def test_ball_rho_closed_form(S2):
    for r in (Fraction(1, 2), 1, 2):
        for s in (Fraction(1, 2), 3):
            for x in S2.points:
                for y in S2.points:
                    lhs, rhs = ball_rho_closed_form(S2, r, x, s, y)
                    assert lhs == rhs


def test_kz_string(S2, star):
    batt = _reps(S2)
    Phis = representables(batt.space) + [weight(batt.space, [1, 0]), weight(batt.space, [0, 0])]
    probes = [weight(S2, [0, 0]), weight(S2, [1, 1]), yoneda(S2, "b")]
    assert kz_string_check(batt, Phis, probes).passed
    sb = _reps(star)
    assert kz_string_check(sb, representables(sb.space), [weight(star, [1])]).passed

    def off_by_shift(b, Phi):
        return shift(mult(b, Phi), 1)

    v = kz_string_check(batt, Phis, probes, mult_fn=off_by_shift)
    assert not v.passed and v.witness["law"] == "m -| y"


def test_kz_needs_representables(S2):
    batt = battery(S2, [yoneda(S2, "a")])
    with pytest.raises(BatteryError):
        kz_string_check(batt, [], [])


def test_closed_weights(S2):
    reps = representables(S2)
    for x in S2.points:
        assert is_closed_weight(yoneda(S2, x), reps).passed
    for vals in ([0, 0], [1, 1], [INF, INF]):
        assert is_closed_weight(weight(S2, vals), reps).passed
    assert is_closed_weight(sup_of(reps), reps).passed


def test_closure(S2):
    reps = representables(S2)
    for vals in ([0, 0], [3, 2], [INF, INF]):
        phi = weight(S2, vals)
        assert closure(phi, reps) == phi


def test_closure_lowers_and_respects_cap():
    sp = validate("ab", [[0, 0], [Fraction(1, 2), 0]])
    # (1/2, 1/2) has colimit b but is no ideal, so closure has work to do
    psi = weight(sp, [Fraction(1, 2), Fraction(1, 2)])
    phi = weight(sp, [Fraction(1, 2), Fraction(1, 2)])
    out = closure(phi, [psi])
    assert out.values == (0, Fraction(1, 2))
    assert closure(out, [psi]) == out
    with pytest.raises(NonConvergence) as err:
        closure(phi, [psi], cap=0)
    assert err.value.cap == 0


def test_kappa_fixpoint(S2, star):
    def gen(space):
        return representables(space) + [weight(space, [0] * len(space))]

    batt, sizes = kappa_iterate(S2, WeightClass.BOUNDED_IDEALS, gen)
    assert {m.values for m in batt.members} == {y.values for y in representables(S2)}
    assert sizes == [2]
    b1, s1 = kappa_iterate(star, WeightClass.BOUNDED_IDEALS, gen)
    assert [m.values for m in b1.members] == [(0,)]


def test_reflect_map(S2, star):
    batt = _reps(S2)
    refl = reflect_map(identity_map(S2), batt, representables(S2))
    assert refl.points == ("a", "b") and refl.factorizes
    f = nonexpansive_map(S2, star, ["*", "*"])
    refl = reflect_map(f, batt, representables(S2))
    assert all(w.values == (0,) for w in refl.images) and refl.factorizes
