"""Min-plus kernels on exactly scaled integer tables.

Rational tables are brought to a common denominator ``L`` and stored as int64,
with ``BIG`` standing for infinity.  Every kernel here is exact on that encoding:
sums saturate at ``BIG`` and all comparisons are integer comparisons.

Two implementations exist for each kernel: a numba ``@njit`` version and a
vectorised numpy version.  ``QMDOMAIN_NUMBA=0`` in the environment (or a failed
numba import) selects numpy.  Both paths are kept in sync by the test suite.
"""
from __future__ import annotations

import math
import os
from fractions import Fraction
from typing import Sequence

import numpy as np

from .numerics import INF, Ext

BIG = np.int64(1 << 60)
# Finite scaled magnitudes must stay below this so that a + b never overflows.
LIMIT = 1 << 58


def _numba_requested() -> bool:
    return os.environ.get("QMDOMAIN_NUMBA", "1").strip().lower() not in ("0", "false", "no", "off")


try:  # pragma: no cover - depends on environment
    if not _numba_requested():
        raise ImportError("numba disabled by QMDOMAIN_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


class ScaleOverflow(ArithmeticError):
    """The exact integer encoding would exceed the int64 budget."""


def common_denominator(values: Sequence[Ext]) -> int:
    den = 1
    for v in values:
        if v != INF:
            den = math.lcm(den, Fraction(v).denominator)
    return den


def scale(values, den: int) -> np.ndarray:
    """Encode a nested sequence of extended rationals as int64 over ``den``."""
    arr = np.asarray(values, dtype=object)
    out = np.empty(arr.shape, dtype=np.int64)
    flat_in = arr.reshape(-1)
    flat_out = out.reshape(-1)
    for i, v in enumerate(flat_in):
        if v == INF:
            flat_out[i] = BIG
            continue
        q = Fraction(v) * den
        if q.denominator != 1:
            raise ScaleOverflow(f"{v} is not a multiple of 1/{den}")
        if q.numerator >= LIMIT:
            raise ScaleOverflow(f"{v} too large for the scaled encoding")
        flat_out[i] = q.numerator
    return out


def unscale(arr: np.ndarray, den: int):
    """Inverse of :func:`scale`; returns nested lists of Fractions / INF."""
    def conv(x):
        x = int(x)
        return INF if x >= BIG else Fraction(x, den)

    if arr.ndim == 0:
        return conv(arr)
    if arr.ndim == 1:
        return [conv(x) for x in arr]
    return [unscale(row, den) for row in arr]


# ---------------------------------------------------------------------------
# numpy reference path


def _sat(a: np.ndarray) -> np.ndarray:
    return np.minimum(a, BIG)


def _minplus_np(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # out[i, k] = min_j a[i, j] + b[j, k]
    s = _sat(a[:, :, None] + b[None, :, :])
    return s.min(axis=1)


def _closure_np(a: np.ndarray) -> np.ndarray:
    d = a.copy()
    for k in range(d.shape[0]):
        d = np.minimum(d, _sat(d[:, k:k + 1] + d[k:k + 1, :]))
    return d


def _valid_tables_np(tables: np.ndarray) -> np.ndarray:
    n = tables.shape[1]
    idx = np.arange(n)
    ok = (tables[:, idx, idx] == 0).all(axis=1)
    # d[x,y] + d[y,z] >= d[x,z]
    lhs = _sat(tables[:, :, :, None] + tables[:, None, :, :])
    ok &= (lhs >= tables[:, :, None, :]).all(axis=(1, 2, 3))
    zero = tables == 0
    both = zero & np.swapaxes(zero, 1, 2)
    both[:, idx, idx] = False
    ok &= ~both.any(axis=(1, 2))
    return ok


def _weight_mask_np(d: np.ndarray, cands: np.ndarray) -> np.ndarray:
    # phi(y) + d(x,y) >= phi(x) for all x, y
    lhs = _sat(cands[:, None, :] + d[None, :, :])
    return (lhs >= cands[:, :, None]).all(axis=(1, 2))


def _ideal_mask_np(d: np.ndarray, cands: np.ndarray) -> np.ndarray:
    """Equality-witness pattern search: min phi = 0 and every pair has a common witness."""
    n = d.shape[0]
    ok = cands.min(axis=1) == 0
    # hit[m, x, z]: phi(z) + d(x, z) == phi(x)
    hit = _sat(cands[:, None, :] + d[None, :, :]) == cands[:, :, None]
    for x in range(n):
        for y in range(x + 1, n):
            ok &= (hit[:, x, :] & hit[:, y, :]).any(axis=1)
    return ok


def _eps_directed_np(d: np.ndarray, cands: np.ndarray, eps: np.ndarray) -> np.ndarray:
    """Directedness of the sampled ball sets {(x, phi(x) + e) : e in eps}.

    A pair of sampled balls (x, r), (y, s) has an upper bound inside
    {(z, t) : phi(z) < t} iff some z has phi(z) + d(x, z) < r and
    phi(z) + d(y, z) < s.  Infinite-valued points carry no balls.
    """
    n = d.shape[0]
    ok = cands.min(axis=1) == 0
    reach = _sat(cands[:, None, :] + d[None, :, :])  # reach[m, x, z]
    finite = cands < BIG
    for x in range(n):
        for y in range(n):
            for e1 in eps:
                for e2 in eps:
                    r = cands[:, x] + e1
                    s = cands[:, y] + e2
                    good = ((reach[:, x, :] < r[:, None]) & (reach[:, y, :] < s[:, None])).any(axis=1)
                    active = finite[:, x] & finite[:, y]
                    ok &= good | ~active
    return ok


# ---------------------------------------------------------------------------
# numba path

if HAVE_NUMBA:  # pragma: no branch

    @njit(cache=True)
    def _sadd(a, b):
        if a >= BIG or b >= BIG:
            return BIG
        s = a + b
        return s if s < BIG else BIG

    @njit(cache=True)
    def _minplus_nb(a, b):
        n, m = a.shape
        k = b.shape[1]
        out = np.empty((n, k), dtype=np.int64)
        for i in range(n):
            for c in range(k):
                best = BIG
                for j in range(m):
                    s = _sadd(a[i, j], b[j, c])
                    if s < best:
                        best = s
                out[i, c] = best
        return out

    @njit(cache=True)
    def _closure_nb(a):
        d = a.copy()
        n = d.shape[0]
        for k in range(n):
            for i in range(n):
                dik = d[i, k]
                if dik >= BIG:
                    continue
                for j in range(n):
                    s = _sadd(dik, d[k, j])
                    if s < d[i, j]:
                        d[i, j] = s
        return d

    @njit(cache=True)
    def _valid_tables_nb(tables):
        cnt, n, _ = tables.shape
        out = np.ones(cnt, dtype=np.bool_)
        for t in range(cnt):
            d = tables[t]
            good = True
            for x in range(n):
                if d[x, x] != 0:
                    good = False
            for x in range(n):
                if not good:
                    break
                for y in range(n):
                    if not good:
                        break
                    if x != y and d[x, y] == 0 and d[y, x] == 0:
                        good = False
                    for z in range(n):
                        if _sadd(d[x, y], d[y, z]) < d[x, z]:
                            good = False
                            break
            out[t] = good
        return out

    @njit(cache=True)
    def _weight_mask_nb(d, cands):
        m, n = cands.shape
        out = np.ones(m, dtype=np.bool_)
        for c in range(m):
            good = True
            for x in range(n):
                for y in range(n):
                    if _sadd(cands[c, y], d[x, y]) < cands[c, x]:
                        good = False
                        break
                if not good:
                    break
            out[c] = good
        return out

    @njit(cache=True)
    def _ideal_mask_nb(d, cands):
        m, n = cands.shape
        out = np.zeros(m, dtype=np.bool_)
        for c in range(m):
            lo = BIG
            for x in range(n):
                if cands[c, x] < lo:
                    lo = cands[c, x]
            if lo != 0:
                continue
            good = True
            for x in range(n):
                for y in range(x + 1, n):
                    found = False
                    for z in range(n):
                        pz = cands[c, z]
                        if _sadd(pz, d[x, z]) == cands[c, x] and _sadd(pz, d[y, z]) == cands[c, y]:
                            found = True
                            break
                    if not found:
                        good = False
                        break
                if not good:
                    break
            out[c] = good
        return out

    @njit(cache=True)
    def _eps_directed_nb(d, cands, eps):
        m, n = cands.shape
        out = np.zeros(m, dtype=np.bool_)
        for c in range(m):
            lo = BIG
            for x in range(n):
                if cands[c, x] < lo:
                    lo = cands[c, x]
            if lo != 0:
                continue
            good = True
            for x in range(n):
                if cands[c, x] >= BIG:
                    continue
                for y in range(n):
                    if cands[c, y] >= BIG:
                        continue
                    for i in range(eps.shape[0]):
                        r = cands[c, x] + eps[i]
                        for j in range(eps.shape[0]):
                            s = cands[c, y] + eps[j]
                            found = False
                            for z in range(n):
                                pz = cands[c, z]
                                if _sadd(pz, d[x, z]) < r and _sadd(pz, d[y, z]) < s:
                                    found = True
                                    break
                            if not found:
                                good = False
                                break
                        if not good:
                            break
                    if not good:
                        break
                if not good:
                    break
            out[c] = good
        return out


def _pick(nb_name: str, np_fn, use_numba: bool | None):
    if use_numba is None:
        use_numba = HAVE_NUMBA
    if use_numba and HAVE_NUMBA:
        return globals()[nb_name]
    return np_fn


def minplus(a: np.ndarray, b: np.ndarray, use_numba: bool | None = None) -> np.ndarray:
    return _pick("_minplus_nb", _minplus_np, use_numba)(a, b)


def closure(a: np.ndarray, use_numba: bool | None = None) -> np.ndarray:
    return _pick("_closure_nb", _closure_np, use_numba)(a)


def valid_tables(tables: np.ndarray, use_numba: bool | None = None) -> np.ndarray:
    return _pick("_valid_tables_nb", _valid_tables_np, use_numba)(tables)


def weight_mask(d: np.ndarray, cands: np.ndarray, use_numba: bool | None = None) -> np.ndarray:
    return _pick("_weight_mask_nb", _weight_mask_np, use_numba)(d, cands)


def ideal_mask(d: np.ndarray, cands: np.ndarray, use_numba: bool | None = None) -> np.ndarray:
    return _pick("_ideal_mask_nb", _ideal_mask_np, use_numba)(d, cands)


def eps_directed_mask(d: np.ndarray, cands: np.ndarray, eps: np.ndarray,
                      use_numba: bool | None = None) -> np.ndarray:
    return _pick("_eps_directed_nb", _eps_directed_np, use_numba)(d, cands, eps)


def backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"
