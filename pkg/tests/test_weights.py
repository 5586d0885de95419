from fractions import Fraction

import pytest

from qmdomain.numerics import INF
from qmdomain.weights import (WeightInequalityError, coweight, envelope, inf_of, rho, shift, sup_of, weight,
                              yoneda, yoneda_lemma_check)


def test_weight_inequality_enforced(S2):
    with pytest.raises(WeightInequalityError):
        weight(S2, [0, 3])  # 3 > 0 + d(b, a) = 2
    assert weight(S2, [0, 2]).values == (0, 2)


def test_rho_examples(S2):
    ya, yb = weight(S2, [0, 2]), weight(S2, [1, 0])
    assert rho(ya, yb) == 1
    assert rho(yb, ya) == 2
    assert rho(ya, ya) == 0


def test_yoneda_examples(S2, S2z, star):
    assert yoneda(S2, "a").values == (0, 2)
    assert yoneda(star, "*").values == (0,)
    assert yoneda(S2z, "b").values == (0, 0)


def test_yoneda_lemma_examples(S2):
    assert yoneda_lemma_check("a", yoneda(S2, "b")) == (1, 1)
    assert yoneda_lemma_check("a", yoneda(S2, "a")) == (0, 0)
    assert yoneda_lemma_check("b", weight(S2, [0, 0])) == (0, 0)


def test_lattice(S2):
    ya, yb = yoneda(S2, "a"), yoneda(S2, "b")
    assert inf_of([ya, yb]).values == (0, 0)
    assert sup_of([ya, yb]).values == (1, 2)
    assert sup_of([ya]) == ya


def test_shift(S2):
    ya = yoneda(S2, "a")
    assert shift(ya, 1).values == (1, 3)
    assert shift(ya, 0, "tminus") == ya
    assert shift(weight(S2, [1, 3]), 2, "tminus").values == (0, 1)


def test_envelope(S2):
    assert envelope(S2, [2, 0]).values == (1, 0)
    assert envelope(S2, [0, 0]).values == (0, 0)
    ya = yoneda(S2, "a")
    assert envelope(S2, ya.values) == ya


def test_constant_infinity_is_a_weight(S2):
    assert weight(S2, [INF, INF]).values == (INF, INF)


def test_coweight_lives_on_opposite(S2):
    # coweights satisfy psi(x) <= psi(y) + d(y, x)
    psi = coweight(S2, [Fraction(0), Fraction(1)])
    assert psi.values == (0, 1)
    with pytest.raises(WeightInequalityError):
        coweight(S2, [0, 2])
