from fractions import Fraction

import pytest

from qmdomain.numerics import INF, EncodingError, add, ext, fmt, minmax, parse, tminus


def test_add_examples():
    assert add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
    assert add(Fraction(7, 3), 0) == Fraction(7, 3)
    assert add(3, INF) == INF


def test_tminus_examples():
    assert tminus(5, 3) == 2
    assert tminus(3, 5) == 0
    assert tminus(INF, INF) == 0
    assert tminus(INF, 4) == INF
    assert tminus(4, INF) == 0


def test_tminus_is_residuation():
    vals = [Fraction(0), Fraction(1, 3), Fraction(2), INF]
    for a in vals:
        for b in vals:
            c = tminus(a, b)
            # c is the least value with c + b >= a among the candidates
            assert add(c, b) >= a
            assert all(add(x, b) < a for x in vals if x < c)


def test_minmax():
    assert minmax([1, Fraction(1, 2), INF]) == (Fraction(1, 2), INF)
    assert minmax([Fraction(4)]) == (4, 4)
    assert minmax([0, 0]) == (0, 0)
    with pytest.raises(ValueError):
        minmax([])


@pytest.mark.parametrize("text,value", [("3/6", Fraction(1, 2)), ("inf", INF), ("0", 0), ("12", 12)])
def test_parse(text, value):
    assert parse(text) == value


@pytest.mark.parametrize("text", ["-1", "1/0", "0.5", "abc", "", "1/-2"])
def test_parse_rejects(text):
    with pytest.raises(EncodingError):
        parse(text)


def test_parse_denominator_cap():
    with pytest.raises(EncodingError):
        parse("1/1001", denominator_cap=1000)


def test_fmt_roundtrip():
    for v in [Fraction(0), Fraction(5, 6), Fraction(4), INF]:
        assert parse(fmt(v)) == v
    assert fmt(Fraction(2, 4)) == "1/2"


def test_ext_rejects_inexact():
    with pytest.raises(EncodingError):
        ext(0.5)
    with pytest.raises(EncodingError):
        ext(-1)
    with pytest.raises(EncodingError):
        ext(True)
    assert ext(float("inf")) == INF
