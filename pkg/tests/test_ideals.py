from fractions import Fraction

from qmdomain.distributors import identity_map, nonexpansive_map
from qmdomain.ideals import (NetPresentation, bounded_net_check, colimit_of, ideal_from_net, is_bounded,
                             is_ideal, is_representable, weighted_colimit, weighted_limit)
from qmdomain.numerics import INF
from qmdomain.space import opposite, singleton, validate
from qmdomain.streamed import qlo, qlo_ascending, qlo_sup_into
from qmdomain.weights import Weight, weight, yoneda


def test_is_ideal_examples(S2):
    assert is_ideal(weight(S2, [0, 2])).ok
    res = is_ideal(weight(S2, [0, 0]))
    assert not res.ok and res.witness == ("a", "b")
    for x in S2.points:
        assert is_ideal(yoneda(S2, x)).ok
    assert not is_ideal(weight(S2, [1, 1])).ok


def test_is_bounded_examples(S2):
    res = is_bounded(weight(S2, [0, 2]))
    assert res.ok and res.witness == ("a", 0)
    assert is_bounded(weight(S2, [3, 2])).ok
    # the all-inf weight imposes nothing, so any anchor works
    assert is_bounded(weight(S2, [INF, INF])).ok
    apart = validate("ab", [[0, INF], [INF, 0]])
    assert not is_bounded(weight(apart, [0, 0])).ok


def test_colimit_examples(S2, S2z):
    assert colimit_of(yoneda(S2, "b")) == "b"
    assert colimit_of(weight(S2z, [0, 0])) == "b"
    assert colimit_of(weight(S2, [0, 0])) is None


def test_weighted_colimit_and_limit(S2):
    star = singleton()
    for x in S2.points:
        f = nonexpansive_map(star, S2, [x])
        assert weighted_colimit(f, weight(star, [0])) == x
        assert weighted_limit(f, weight(opposite(star), [0])) == x
    for phi in (yoneda(S2, "a"), weight(S2, [0, 0])):
        assert weighted_colimit(identity_map(S2), phi) == colimit_of(phi)


def test_is_representable(S2):
    assert is_representable(yoneda(S2, "a")) == "a"
    assert is_representable(weight(S2, [0, 0])) is None
    assert is_representable(Weight(S2, (Fraction(0), Fraction(2)))) == "a"


def test_ideal_from_constant_net(S2):
    assert ideal_from_net(NetPresentation(S2, ("a", "b"))) == yoneda(S2, "b")
    assert ideal_from_net(NetPresentation(S2, ("a",))) == yoneda(S2, "a")


def test_ideal_from_qlo_net_decreases_to_zero():
    net = NetPresentation(qlo(), (), qlo_ascending, "qlo-ascending")
    stages = [ideal_from_net(net, h) for h in (4, 8, 16, 32)]
    for small, big in zip(stages, stages[1:]):
        k = len(small.values)
        assert all(b <= s for s, b in zip(small.values, big.values[:k]))
    last = stages[-1]
    # every stage value at y is y ⊖ x_H for the last net point
    xH = Fraction(qlo_ascending(31))
    assert all(v == max(Fraction(0), Fraction(p) - xH) for p, v in zip(last.points, last.values))


def test_bounded_net_examples(S2):
    assert bounded_net_check(NetPresentation(S2, ("a", "b"))).bounded
    net = NetPresentation(qlo(), (), qlo_ascending, "qlo-ascending")
    v = bounded_net_check(net, 32, sup_into=qlo_sup_into)
    assert v.bounded and v.anchor == "0" and v.radius == 1


def test_bounded_net_with_escaping_point():
    sp = validate("ab", [[0, INF], [INF, 0]])
    net = NetPresentation(sp, ("a",))
    # the net constant at a generates y(a), which is bounded by a itself ...
    v = bounded_net_check(net)
    assert v.bounded and v.anchor == "a" and v.radius == 0
    # ... but no finite radius works for the anchor b: x = b escapes
    w = bounded_net_check(net, anchor="b")
    assert not w.bounded and w.witness == {"anchor": "b", "x": "a"}
