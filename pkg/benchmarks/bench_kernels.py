"""Time the numba kernels against their numpy twins on gate-sized workloads.

    python3 benchmarks/bench_kernels.py [--repeat 5]

The first numba call of each kernel includes compilation and is reported separately.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from qmdomain import _kernels as K
from qmdomain.space import validate
from qmdomain.verification.oracles import candidate_weights, eps_depth, eps_oracle


def _best(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def workloads(rng: np.random.Generator):
    big = int(K.BIG)
    a = rng.integers(0, 50, size=(120, 120)).astype(np.int64)
    a[rng.random(a.shape) < 0.1] = big
    b = rng.integers(0, 50, size=(120, 120)).astype(np.int64)
    sq = rng.integers(0, 50, size=(60, 60)).astype(np.int64)
    np.fill_diagonal(sq, 0)
    tables = rng.integers(0, 4, size=(20000, 3, 3)).astype(np.int64)
    tables[:, range(3), range(3)] = 0
    sp = validate("abc", [[0, 1, 2], ["3/2", 0, 1], ["1/2", "3/2", 0]])
    den, d, cands, _ = candidate_weights(sp)
    k = eps_depth(den)
    return {
        "minplus 120x120": (lambda nb: K.minplus(a, b, use_numba=nb)),
        "closure 60x60": (lambda nb: K.closure(sq, use_numba=nb)),
        "valid_tables 20000x3x3": (lambda nb: K.valid_tables(tables, use_numba=nb)),
        f"weight_mask {len(cands)} cands": (lambda nb: K.weight_mask(d, cands, use_numba=nb)),
        f"ideal_mask {len(cands)} cands": (lambda nb: K.ideal_mask(d, cands, use_numba=nb)),
        f"eps oracle {len(cands)} cands": (lambda nb: _eps(d, cands, den, k, nb)),
    }


def _eps(d, cands, den, k, nb):
    scale = 1 << k
    eps = np.array([scale >> j for j in range(k + 1)], dtype=np.int64)
    big = K.BIG
    d2 = np.where(d >= big, big, d * scale)
    c2 = np.where(cands >= big, big, cands * scale)
    return K.eps_directed_mask(d2, c2, eps, use_numba=nb)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if not K.HAVE_NUMBA:
        print("numba is unavailable (or disabled by QMDOMAIN_NUMBA); nothing to compare")
        return
    print(f"{'kernel':32s} {'compile+1st':>12s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
    for name, fn in workloads(np.random.default_rng(args.seed)).items():
        t = time.perf_counter()
        first = fn(True)
        jit = time.perf_counter() - t
        if not np.array_equal(first, fn(False)):
            raise SystemExit(f"{name}: backends disagree")
        nb, npy = _best(lambda: fn(True), args.repeat), _best(lambda: fn(False), args.repeat)
        print(f"{name:32s} {jit:11.3f}s {nb * 1e3:8.2f}ms {npy * 1e3:8.2f}ms {npy / nb:7.1f}x")


if __name__ == "__main__":
    main()
