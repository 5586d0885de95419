"""Named suites: instance generators feeding the replayable checks, plus aggregation."""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np

from .. import io
from ..formal_balls import default_shifts
from ..ideals import is_bounded, is_ideal
from ..monadics import NonConvergence, WeightClass, battery, in_class
from ..numerics import fmt
from ..verdict import BATTERY_PASSED, PASSED_AT_HORIZON, PROVEN, Verdict
from ..weights import representables
from .checks import record, run_check
from .gen import GenConfig, gen_spaces, gen_weights, random_distributor, random_map, rng_for
from .oracles import MAX_ORACLE_POINTS, all_spaces

REPORT_FORMAT = 1

Instance = tuple[str, dict]


def _vals(phi) -> list[str]:
    return [fmt(v) for v in phi.values]


def _half(rng: np.random.Generator, top: int = 6) -> Fraction:
    return Fraction(int(rng.integers(0, top + 1)), 2)


def _yoneda_lemma(cfg: GenConfig) -> Iterator[Instance]:
    count = 0
    for space in gen_spaces(cfg):
        sj = io.space_to_json(space)
        for phi in gen_weights(space, cfg):
            yield "yoneda-lemma", {"space": sj, "phi": _vals(phi)}
            count += 1
            if count >= cfg.trials:
                return


def _yoneda_isometry(cfg: GenConfig) -> Iterator[Instance]:
    for _, space in zip(range(cfg.trials), gen_spaces(cfg)):
        yield "yoneda-isometry", {"space": io.space_to_json(space)}


def _distributor_laws(cfg: GenConfig) -> Iterator[Instance]:
    rng = rng_for(cfg, 11)
    spaces = gen_spaces(cfg.replace(max_points=min(cfg.max_points, 4)))
    for _ in range(cfg.trials):
        X, Y, Z, W = (next(spaces) for _ in range(4))
        f = random_map(rng, X, Y)
        yield "distributor-laws", {
            "spaces": {k: io.space_to_json(s) for k, s in zip("XYZW", (X, Y, Z, W))},
            "phi": io.distributor_to_json(random_distributor(rng, cfg, X, Y))["values"],
            "psi": io.distributor_to_json(random_distributor(rng, cfg, Y, Z))["values"],
            "chi": io.distributor_to_json(random_distributor(rng, cfg, Z, W))["values"],
            "map": list(f.assignment),
            "weights_x": [_vals(w) for w in gen_weights(X, cfg, count=3, rng=rng)],
            "weights_y": [_vals(w) for w in gen_weights(Y, cfg, count=3, rng=rng)],
        }


def _ideal_gate(cfg: GenConfig) -> Iterator[Instance]:
    grid = [fmt(v) for v in cfg.entry_grid]
    for n in range(1, min(cfg.max_points, MAX_ORACLE_POINTS) + 1):
        for space in all_spaces(n, cfg.entry_grid):
            yield "ideal-oracle-gate", {"space": io.space_to_json(space), "grid": grid}


def _ideals(space, cfg: GenConfig, rng=None):
    return [w for w in gen_weights(space, cfg, rng=rng) if is_ideal(w).ok]


def _ball_coherence(cfg: GenConfig) -> Iterator[Instance]:
    rng = rng_for(cfg, 12)
    small = cfg.replace(max_points=min(cfg.max_points, MAX_ORACLE_POINTS))
    for _, space in zip(range(cfg.trials), gen_spaces(small)):
        sj = io.space_to_json(space)
        k = int(rng.integers(1, 4))
        balls = [{"point": space.points[int(rng.integers(0, len(space)))], "radius": fmt(_half(rng))}
                 for _ in range(k)]
        yield "ball-lub", {"space": sj, "balls": balls}
        ideals = _ideals(space, cfg)
        phi = ideals[int(rng.integers(0, len(ideals)))]
        yield "family-join", {"space": sj, "ideal": _vals(phi), "offset": fmt(_half(rng)),
                              "shifts": [fmt(t) for t in default_shifts()]}


def _j_algebra(cfg: GenConfig) -> Iterator[Instance]:
    for _, space in zip(range(cfg.trials), gen_spaces(cfg)):
        yield "j-algebra-theorem", {"space": io.space_to_json(space),
                                    "ideals": [_vals(w) for w in _ideals(space, cfg)],
                                    "offsets": [fmt(t) for t in default_shifts()]}


def _saturation(cfg: GenConfig) -> Iterator[Instance]:
    counted = 0
    for space in gen_spaces(cfg):
        sj = io.space_to_json(space)
        for tag in (WeightClass.BOUNDED_IDEALS, WeightClass.IDEALS, WeightClass.BOUNDED, WeightClass.BALLS):
            members = [w for w in gen_weights(space, cfg) if in_class(tag, w)][:8]
            if not members:
                continue
            batt = battery(space, members)
            Phis = [w for w in gen_weights(batt.space, cfg) if in_class(tag, w)]
            yield "saturation", {"space": sj, "class": tag.value, "members": [_vals(m) for m in batt.members],
                                 "Phis": [_vals(w) for w in Phis]}
            if tag is WeightClass.BOUNDED_IDEALS:
                counted += len(Phis)
        if counted >= cfg.trials:
            return


def _kz_string(cfg: GenConfig) -> Iterator[Instance]:
    rng = rng_for(cfg, 13)
    for _, space in zip(range(cfg.trials), gen_spaces(cfg)):
        pool = gen_weights(space, cfg, count=8, rng=rng)
        batt = battery(space, pool[:8])
        yield "kz-string", {"space": io.space_to_json(space), "members": [_vals(m) for m in batt.members],
                            "Phis": [_vals(w) for w in gen_weights(batt.space, cfg, count=6, rng=rng)],
                            "probes": [_vals(w) for w in gen_weights(space, cfg, count=4, rng=rng)]}


def _continuity(cfg: GenConfig) -> Iterator[Instance]:
    rng = rng_for(cfg, 14)
    for _, space in zip(range(cfg.trials), gen_spaces(cfg)):
        sj = io.space_to_json(space)
        yield "waybelow", {"space": sj, "w": None}
        yield "interpolation", {"space": sj, "w": None}
        if len(space) <= MAX_ORACLE_POINTS:
            pool = [w for w in _ideals(space, cfg) if is_bounded(w).ok]
            keep = [w for w in pool if rng.integers(0, 2)] or pool[:1]
            yield "j-below", {"space": sj, "battery": [_vals(w) for w in keep]}


def _closure(cfg: GenConfig) -> Iterator[Instance]:
    count = 0
    for space in gen_spaces(cfg):
        sj = io.space_to_json(space)
        ideals = [_vals(w) for w in representables(space)]
        for phi in gen_weights(space, cfg, count=4):
            yield "closure-laws", {"space": sj, "phi": _vals(phi), "ideals": ideals, "cap": 64}
            count += 1
            if count >= cfg.trials:
                return


def _qlo(cfg: GenConfig) -> Iterator[Instance]:
    yield "qlo-j-algebra", {"horizon": cfg.horizon}
    yield "qlo-local-dcpo", {"horizon": cfg.horizon, "ideal": "zero", "offset": "1"}


@dataclass(frozen=True)
class Suite:
    name: str
    instances: Callable[[GenConfig], Iterator[Instance]]
    defaults: dict
    expect_refutation: bool = False


SUITES: dict[str, Suite] = {s.name: s for s in [
    Suite("yoneda-lemma", _yoneda_lemma, {"trials": 500, "max_points": 6}),
    Suite("yoneda-isometry", _yoneda_isometry, {"trials": 500, "max_points": 6}),
    Suite("distributor-laws", _distributor_laws, {"trials": 300, "max_points": 4}),
    Suite("ideal-oracle-gate", _ideal_gate, {"trials": 1, "max_points": 3}),
    Suite("formal-ball-coherence", _ball_coherence, {"trials": 300, "max_points": 3}),
    Suite("j-algebra-theorem", _j_algebra, {"trials": 150, "max_points": 5}),
    Suite("saturation", _saturation, {"trials": 200, "max_points": 5}),
    Suite("kz-string", _kz_string, {"trials": 60, "max_points": 6}),
    Suite("continuity", _continuity, {"trials": 40, "max_points": 4}),
    Suite("closure-laws", _closure, {"trials": 200, "max_points": 5}),
    Suite("qlo-refutations", _qlo, {"trials": 1, "horizon": 32}, expect_refutation=True),
]}


class UnknownSuite(KeyError):
    pass


def suite_config(name: str, seed: int = 0, **overrides) -> GenConfig:
    """The pinned config of a suite with non-None overrides applied."""
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    kw = dict(SUITES[name].defaults)
    kw.update({k: v for k, v in overrides.items() if v is not None})
    return GenConfig(seed=seed, **kw)


def _aggregate(verdicts: list[Verdict]) -> str:
    statuses = [v.status for v in verdicts]
    for v in verdicts:
        if not v.passed:
            return v.status
    if all(s == PROVEN for s in statuses):
        return PROVEN
    if PASSED_AT_HORIZON in statuses:
        return PASSED_AT_HORIZON
    return BATTERY_PASSED


def run_suite(name: str, cfg: GenConfig | None = None) -> dict:
    """Run a suite and return its report document.

    Only the ``timing`` entry depends on anything but the suite name and config.
    """
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    suite = SUITES[name]
    cfg = suite_config(name) if cfg is None else cfg
    start = time.perf_counter()
    by_check: dict[str, list[Verdict]] = {}
    witnesses: list[dict] = []
    non_convergence = None
    for check, inp in suite.instances(cfg):
        try:
            v = run_check(check, inp)
        except NonConvergence as e:
            non_convergence = {"format": 1, "check": check, "input": inp,
                               "error": "non-convergence", "cap": e.cap}
            break
        by_check.setdefault(check, []).append(v)
        if not v.passed:
            witnesses.append(record(check, inp, v))
    checks = []
    for check, vs in by_check.items():
        first_bad = next((v for v in vs if not v.passed), None)
        checks.append({"check": check, "instances": len(vs), "status": _aggregate(vs),
                       "refutations": sum(1 for v in vs if not v.passed),
                       "witness": None if first_bad is None else first_bad.witness})
    refuted = any(c["refutations"] for c in checks)
    if non_convergence is not None:
        status = "non-convergence"
    elif suite.expect_refutation:
        status = "pass" if checks and all(c["refutations"] == c["instances"] for c in checks) else "missing-refutation"
    else:
        status = "refuted" if refuted else "pass"
    report = {
        "format": REPORT_FORMAT,
        "suite": name,
        "config": cfg.to_json(),
        "expect_refutation": suite.expect_refutation,
        "status": status,
        "checks": checks,
        "witnesses": witnesses,
    }
    if non_convergence is not None:
        report["non_convergence"] = non_convergence
    report["timing"] = {"seconds": round(time.perf_counter() - start, 3)}
    return report


def without_timing(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "timing"}
