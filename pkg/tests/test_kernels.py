import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qmdomain import _kernels as K

pytestmark = pytest.mark.skipif(not K.HAVE_NUMBA, reason="numba unavailable")

BIG = int(K.BIG)
entries = st.one_of(st.integers(0, 12), st.just(BIG))


def _table(n, draw):
    t = np.array([[0 if i == j else draw(entries) for j in range(n)] for i in range(n)], dtype=np.int64)
    return t


@st.composite
def square(draw, max_n=5):
    return _table(draw(st.integers(1, max_n)), draw)


@st.composite
def pair(draw):
    n, m, k = (draw(st.integers(1, 4)) for _ in range(3))
    a = np.array([[draw(entries) for _ in range(m)] for _ in range(n)], dtype=np.int64)
    b = np.array([[draw(entries) for _ in range(k)] for _ in range(m)], dtype=np.int64)
    return a, b


@given(pair())
def test_minplus_parity(ab):
    a, b = ab
    assert np.array_equal(K.minplus(a, b, use_numba=True), K.minplus(a, b, use_numba=False))


@given(square())
def test_closure_parity(t):
    assert np.array_equal(K.closure(t, use_numba=True), K.closure(t, use_numba=False))


@given(st.lists(square(3), min_size=1, max_size=6).filter(lambda ts: len({t.shape for t in ts}) == 1))
def test_valid_tables_parity(ts):
    stack = np.stack(ts)
    assert np.array_equal(K.valid_tables(stack, use_numba=True), K.valid_tables(stack, use_numba=False))


@st.composite
def space_and_cands(draw):
    d = K.closure(_table(draw(st.integers(1, 3)), draw), use_numba=False)
    n = d.shape[0]
    cands = np.array([[draw(entries) for _ in range(n)] for _ in range(draw(st.integers(1, 12)))],
                     dtype=np.int64)
    return d, cands


@given(space_and_cands())
def test_mask_parity(dc):
    d, c = dc
    for name in ("weight_mask", "ideal_mask"):
        fn = getattr(K, name)
        assert np.array_equal(fn(d, c, use_numba=True), fn(d, c, use_numba=False))
    eps = np.array([8, 4, 2, 1], dtype=np.int64)
    d8 = np.where(d >= BIG, BIG, d * 8)
    c8 = np.where(c >= BIG, BIG, c * 8)
    assert np.array_equal(K.eps_directed_mask(d8, c8, eps, use_numba=True),
                          K.eps_directed_mask(d8, c8, eps, use_numba=False))


def test_saturation_at_big():
    a = np.array([[BIG, 1]], dtype=np.int64)
    b = np.array([[BIG], [BIG]], dtype=np.int64)
    for flag in (True, False):
        assert K.minplus(a, b, use_numba=flag)[0, 0] == BIG


def test_scale_roundtrip():
    from fractions import Fraction
    from qmdomain.numerics import INF
    vals = [[Fraction(1, 2), INF], [0, Fraction(2, 3)]]
    den = K.common_denominator([v for r in vals for v in r])
    assert den == 6
    assert K.unscale(K.scale(vals, den), den) == [[Fraction(1, 2), INF], [0, Fraction(2, 3)]]
