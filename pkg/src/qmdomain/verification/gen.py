"""Deterministic generators for spaces, weights, maps, distributors and batteries."""
from __future__ import annotations

import zlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .. import _kernels
from ..distributors import Distributor, NonExpansiveMap
from ..numerics import INF, Ext, ext, fmt
from ..space import FiniteSpace, validate
from ..weights import Weight, envelope, inf_of, representables, shift, sup_of

DEFAULT_GRID: tuple[Ext, ...] = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2), INF)
LABELS = "abcdef"


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    max_points: int = 4
    entry_grid: tuple = field(default=DEFAULT_GRID)
    trials: int = 100
    horizon: int = 32

    def __post_init__(self):
        if not 1 <= self.max_points <= 6:
            raise ValueError("max_points must lie in 1..6")
        if self.trials < 1 or self.horizon < 1:
            raise ValueError("trials and horizon must be positive")
        grid = tuple(sorted({ext(v) for v in self.entry_grid}))
        if not grid or grid[0] != 0:
            raise ValueError("the entry grid must contain 0")
        object.__setattr__(self, "entry_grid", grid)
        object.__setattr__(self, "seed", int(self.seed) & (2**64 - 1))

    def replace(self, **kw) -> "GenConfig":
        d = dict(seed=self.seed, max_points=self.max_points, entry_grid=self.entry_grid,
                 trials=self.trials, horizon=self.horizon)
        d.update(kw)
        return GenConfig(**d)

    def to_json(self) -> dict:
        return {"seed": self.seed, "max_points": self.max_points,
                "entry_grid": [fmt(v) for v in self.entry_grid],
                "trials": self.trials, "horizon": self.horizon}


def space_key(space: FiniteSpace) -> int:
    """Stable 32-bit fingerprint used to derive per-space random streams."""
    text = repr((space.points, [[fmt(v) for v in r] for r in space.dist]))
    return zlib.crc32(text.encode())


def rng_for(cfg: GenConfig, *salt: int) -> np.random.Generator:
    return np.random.default_rng([cfg.seed & 0xFFFFFFFF, cfg.seed >> 32, *salt])


def _repair(table: list[list[Ext]]) -> list[list[Ext]]:
    flat = [v for r in table for v in r]
    den = _kernels.common_denominator(flat)
    arr = _kernels.closure(_kernels.scale(table, den))
    return _kernels.unscale(arr, den)


def _separated(table) -> bool:
    n = len(table)
    return not any(table[i][j] == 0 and table[j][i] == 0 for i in range(n) for j in range(i + 1, n))


def random_space(rng: np.random.Generator, cfg: GenConfig, n: int | None = None) -> FiniteSpace:
    grid = cfg.entry_grid
    while True:
        k = int(rng.integers(1, cfg.max_points + 1)) if n is None else n
        pick = rng.integers(0, len(grid), size=(k, k))
        table = [[Fraction(0) if i == j else grid[pick[i, j]] for j in range(k)] for i in range(k)]
        table = _repair(table)
        if _separated(table):
            return validate(LABELS[:k], table)


def gen_spaces(cfg: GenConfig) -> Iterator[FiniteSpace]:
    """Endless deterministic stream of random spaces with at most ``cfg.max_points`` points."""
    rng = rng_for(cfg, 1)
    while True:
        yield random_space(rng, cfg)


def _random_array(rng: np.random.Generator, grid: Sequence[Ext], n: int) -> list[Ext]:
    return [grid[i] for i in rng.integers(0, len(grid), size=n)]


def gen_weights(space: FiniteSpace, cfg: GenConfig, count: int = 12,
                rng: np.random.Generator | None = None) -> list[Weight]:
    """Representables, the envelope of the zero array, then random shifts,
    finite infs/sups and envelopes, deduplicated, ``count`` extra at most."""
    rng = rng_for(cfg, 2, space_key(space)) if rng is None else rng
    n = len(space)
    out: list[Weight] = []
    seen = set()

    def push(w: Weight) -> None:
        if w.values not in seen:
            seen.add(w.values)
            out.append(w)

    for w in representables(space):
        push(w)
    push(envelope(space, [0] * n))
    finite = [v for v in cfg.entry_grid if v != INF]
    target = len(out) + count
    for _ in range(8 * count):
        if len(out) >= target:
            break
        op = int(rng.integers(0, 4))
        if op == 0:
            push(envelope(space, _random_array(rng, cfg.entry_grid, n)))
        elif op == 1:
            base = out[int(rng.integers(0, len(out)))]
            r = finite[int(rng.integers(0, len(finite)))]
            push(shift(base, r, "plus" if rng.integers(0, 2) else "tminus"))
        else:
            a = out[int(rng.integers(0, len(out)))]
            b = out[int(rng.integers(0, len(out)))]
            push(inf_of([a, b]) if op == 2 else sup_of([a, b]))
    return out


def random_map(rng: np.random.Generator, source: FiniteSpace, target: FiniteSpace,
               tries: int = 20) -> NonExpansiveMap:
    """A random non-expansive map; falls back to a constant map."""
    n = len(source)
    for _ in range(tries):
        img = tuple(int(i) for i in rng.integers(0, len(target), size=n))
        if all(source.dist[i][j] >= target.dist[img[i]][img[j]] for i in range(n) for j in range(n)):
            return NonExpansiveMap(source, target, img)
    return NonExpansiveMap(source, target, (int(rng.integers(0, len(target))),) * n)


def random_distributor(rng: np.random.Generator, cfg: GenConfig, source: FiniteSpace,
                       target: FiniteSpace) -> Distributor:
    """d_X ∘ R ∘ d_Y for a random grid table R, which always satisfies the bimodule law."""
    raw = [_random_array(rng, cfg.entry_grid, len(target)) for _ in range(len(source))]
    flat = [v for r in raw for v in r] + [v for r in source.dist for v in r] + \
        [v for r in target.dist for v in r]
    den = _kernels.common_denominator(flat)
    dx = _kernels.scale(source.dist, den)
    dy = _kernels.scale(target.dist, den)
    out = _kernels.minplus(_kernels.minplus(dx, _kernels.scale(raw, den)), dy)
    return Distributor(source, target, tuple(tuple(r) for r in _kernels.unscale(out, den)))
