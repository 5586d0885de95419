"""Exhaustive ground truth for carriers of at most three points.

Nothing here calls the decision procedures it is used to validate, except the
final ``is_ideal`` filter that the enumeration contract asks for.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .. import _kernels
from ..formal_balls import FormalBall, ball_leq
from ..ideals import colimit_of, is_bounded, is_ideal
from ..numerics import INF, ZERO, Ext, tminus
from ..space import FiniteSpace
from ..weights import Weight
from .gen import DEFAULT_GRID

MAX_ORACLE_POINTS = 3


class CarrierTooLarge(ValueError):
    pass


def _step(values: Sequence[Ext]) -> Fraction:
    fin = [Fraction(v) for v in values if v != INF and v != 0]
    if not fin:
        return Fraction(1)
    den = math.lcm(*(f.denominator for f in fin))
    num = math.gcd(*(int(f * den) for f in fin))
    return Fraction(num, den)


def span_values(space: FiniteSpace, grid: Sequence[Ext] = DEFAULT_GRID) -> list[Ext]:
    """Multiples of the common step of the grid and the distances, up to n times their maximum, plus inf."""
    entries = list(grid) + [v for r in space.dist for v in r]
    step = _step(entries)
    top = max((Fraction(v) for v in entries if v != INF), default=ZERO) * max(len(space), 1)
    count = int(top / step)
    return [step * k for k in range(count + 1)] + [INF]


def candidate_weights(space: FiniteSpace, grid: Sequence[Ext] = DEFAULT_GRID):
    """All weights with values in the span; returns (den, scaled d, scaled candidates, weights)."""
    vals = span_values(space, grid)
    n = len(space)
    den = _kernels.common_denominator(vals + [v for r in space.dist for v in r])
    d = _kernels.scale(space.dist, den)
    idx = np.array(list(itertools.product(range(len(vals)), repeat=n)), dtype=np.int64).reshape(-1, n)
    cands = _kernels.scale(vals, den)[idx]
    keep = np.nonzero(_kernels.weight_mask(d, cands))[0]
    weights = [Weight(space, tuple(vals[j] for j in idx[i])) for i in keep]
    return den, d, cands[keep], weights


def _pattern_solutions(d: np.ndarray, cands: np.ndarray) -> np.ndarray:
    """Union over witness patterns W: pairs -> points of the candidates solving
    phi(W(x,y)) + d(x, W(x,y)) = phi(x) and likewise for y, with min phi = 0."""
    n = d.shape[0]
    big = _kernels.BIG
    reach = np.minimum(cands[:, None, :] + d[None, :, :], big)  # reach[m, x, z]
    eq = reach == cands[:, :, None]
    pairs = [(x, y) for x in range(n) for y in range(x + 1, n)]
    hit = np.zeros(len(cands), dtype=bool)
    for pattern in itertools.product(range(n), repeat=len(pairs)):
        ok = np.ones(len(cands), dtype=bool)
        for (x, y), z in zip(pairs, pattern):
            ok &= eq[:, x, z] & eq[:, y, z]
        hit |= ok
    return hit & (cands.min(axis=1) == 0)


def oracle_ideal_enumeration(space: FiniteSpace, grid: Sequence[Ext] = DEFAULT_GRID) -> list[Weight]:
    if len(space) > MAX_ORACLE_POINTS:
        raise CarrierTooLarge(f"oracle enumeration supports at most {MAX_ORACLE_POINTS} points")
    _, d, cands, weights = candidate_weights(space, grid)
    hit = _pattern_solutions(d, cands)
    return [w for w, h in zip(weights, hit) if h and is_ideal(w).ok]


def eps_oracle(d: np.ndarray, cands: np.ndarray, den: int, k: int) -> np.ndarray:
    """Directedness of sampled ball sets with radii phi(x) + 2^-j, j = 0..k (exact, rescaled)."""
    scale = 1 << k
    eps = np.array([scale >> j for j in range(k + 1)], dtype=np.int64)  # in units of 1/(den * 2^k)
    big = _kernels.BIG
    d2 = np.where(d >= big, big, d * scale)
    c2 = np.where(cands >= big, big, cands * scale)
    return _kernels.eps_directed_mask(d2, c2, eps)


def eps_depth(den: int) -> int:
    # 2^-k must fall below 1/den, the smallest positive gap on the encoding
    return max(1, den.bit_length()) + 2


def ideal_gate(space: FiniteSpace, grid: Sequence[Ext] = DEFAULT_GRID) -> dict:
    """Compare isIdeal, the epsilon oracle and the pattern enumeration on every span weight."""
    if len(space) > MAX_ORACLE_POINTS:
        raise CarrierTooLarge(f"oracle enumeration supports at most {MAX_ORACLE_POINTS} points")
    den, d, cands, weights = candidate_weights(space, grid)
    k = eps_depth(den)
    eps_a = eps_oracle(d, cands, den, k)
    eps_b = eps_oracle(d, cands, den, k + 2)
    pattern = _pattern_solutions(d, cands)
    direct = np.array([is_ideal(w).ok for w in weights], dtype=bool)
    out = {"candidates": len(weights), "ideals": int(direct.sum()), "disagreement": None,
           "ideals_found": [w for w, ok in zip(weights, direct) if ok]}
    for i, w in enumerate(weights):
        row = (bool(direct[i]), bool(eps_a[i]), bool(eps_b[i]), bool(pattern[i]))
        if len(set(row)) != 1:
            out["disagreement"] = {"values": w.values, "is_ideal": row[0], "eps": row[1],
                                   "eps_finer": row[2], "pattern": row[3]}
            break
    return out


def all_spaces(n: int, grid: Sequence[Ext] = DEFAULT_GRID) -> list[FiniteSpace]:
    """Every quasi-metric table on n points with off-diagonal entries from the grid."""
    from ..space import validate
    from .gen import LABELS

    grid = list(grid)
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    den = _kernels.common_denominator(grid)
    if not off:
        return [validate(LABELS[:n], [[ZERO] * n for _ in range(n)])]
    combos = list(itertools.product(range(len(grid)), repeat=len(off)))
    tables = np.zeros((len(combos), n, n), dtype=np.int64)
    gs = _kernels.scale(grid, den)
    idx = np.array(combos)
    for k, (i, j) in enumerate(off):
        tables[:, i, j] = gs[idx[:, k]]
    ok = _kernels.valid_tables(tables)
    out = []
    for t in np.nonzero(ok)[0]:
        out.append(validate(LABELS[:n], _kernels.unscale(tables[t], den)))
    return out


def grid_lub_oracle(space: FiniteSpace, balls: Sequence[FormalBall],
                    step: Fraction = Fraction(1, 4), cap: Fraction = Fraction(4)) -> FormalBall | None:
    """Least element among all grid balls (y, k*step), k*step <= cap, above every ball."""
    radii = [step * k for k in range(int(cap / step) + 1)]
    ups = [FormalBall(y, s) for y in space.points for s in radii
           if all(ball_leq(space, b, FormalBall(y, s)) for b in balls)]
    for c in ups:
        if all(ball_leq(space, c, o) for o in ups):
            return c
    return None


def exhaustive_j_below(space: FiniteSpace, grid: Sequence[Ext] = DEFAULT_GRID):
    """The J-below distributor over every bounded ideal in the enumeration, plus those ideals."""
    ideals = [phi for phi in oracle_ideal_enumeration(space, grid) if is_bounded(phi).ok]
    n = len(space)
    table = [[ZERO] * n for _ in range(n)]
    for phi in ideals:
        b = colimit_of(phi)
        if b is None:
            raise AssertionError(f"enumerated bounded ideal {phi.values} has no colimit")
        bi = space.idx(b)
        for x in range(n):
            for y in range(n):
                table[x][y] = max(table[x][y], tminus(phi.values[x], space.dist[y][bi]))
    return tuple(tuple(r) for r in table), ideals
