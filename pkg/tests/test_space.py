from fractions import Fraction

import pytest

from qmdomain.numerics import INF
from qmdomain.space import (ReflexivityViolation, SeparationViolation, TriangleViolation, opposite,
                            singleton, specialization_order, validate)
from qmdomain.streamed import StreamedSpace, prefix, qlo


def test_validate_examples(S2, star):
    assert len(star) == 1
    assert S2.d("a", "b") == 1 and S2.d("b", "a") == 2
    with pytest.raises(ReflexivityViolation) as e:
        validate(["a", "b"], [[1, 1], [1, 0]])
    assert e.value.x == "a"


def test_validate_triangle_and_separation():
    with pytest.raises(TriangleViolation):
        validate("abc", [[0, 1, 5], [1, 0, 1], [1, 1, 0]])
    with pytest.raises(SeparationViolation):
        validate("ab", [[0, 0], [0, 0]])


def test_infinite_distances_allowed():
    sp = validate("ab", [[0, INF], [INF, 0]])
    assert sp.d("a", "b") == INF


def test_specialization_order(S2, S2z, star):
    assert specialization_order(S2) == {("a", "a"), ("b", "b")}
    assert specialization_order(S2z) == {("a", "a"), ("b", "b"), ("a", "b")}
    assert specialization_order(star) == {("*", "*")}


def test_opposite(S2, star):
    op = opposite(S2)
    assert op.d("a", "b") == 2 and op.d("b", "a") == 1
    sym = validate("ab", [[0, 1], [1, 0]])
    assert opposite(sym) == sym
    assert opposite(star) == star


def test_qlo_prefix():
    view = prefix(qlo(), 3)
    assert list(view.points) == ["0", "1/2", "1/3"]
    assert view.d("1/2", "1/3") == Fraction(1, 6)
    assert view.d("1/3", "1/2") == 0
    assert view.d("0", "1/2") == 0
    assert len(prefix(qlo(), 1)) == 1


def test_prefix_reflexivity_violation():
    bad = StreamedSpace("bad", lambda i: str(i), lambda a, b: Fraction(1))
    with pytest.raises(ReflexivityViolation):
        prefix(bad, 2)


def test_qlo_enumeration_is_injective():
    pts = qlo().points(200)
    assert len(set(pts)) == 200
    vals = [Fraction(p) for p in pts]
    assert all(0 <= v < 1 for v in vals)


def test_singleton_label():
    assert singleton("x").points == ("x",)
