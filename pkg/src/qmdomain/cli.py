"""Command-line entry point.

Exit codes: 0 pass, 1 parse or validation error, 2 refuted, 3 non-convergence,
4 replay mismatch.  Documents go to stdout (or ``--out``), diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import io
from .formal_balls import (DirectedBallFamily, FormalBall, ball_leq, default_radii, distance_table,
                           family_join_bruteforce, family_upper_bounds, lub_finite,
                           representable_battery, streamed_family_refutation, waybelow_verify)
from .ideals import bounded_net_check, colimit_of, is_bounded, is_ideal
from .monadics import NonConvergence, closure
from .numerics import EncodingError, fmt, parse
from .space import AxiomViolation, FiniteSpace, SpaceMismatch, specialization_order
from .streamed import CLOSED_FORM_IDEALS, StreamedSpace, prefix, qlo_sup_into, streamed
from .verification.checks import UnknownCheck, record
from .verification.replay import RecordSchemaError, records_of, replay_record
from .verification.suites import SUITES, UnknownSuite, run_suite, suite_config
from .weights import WeightInequalityError, representables, rho

EXIT_OK, EXIT_INVALID, EXIT_REFUTED, EXIT_NONCONVERGENCE, EXIT_REPLAY = 0, 1, 2, 3, 4


class UsageError(ValueError):
    pass


def _load(path: str):
    return io.load_file(path), Path(path).parent


def _emit(doc, args) -> None:
    text = doc if isinstance(doc, str) else io.dumps(doc)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _verdict_exit(verdict) -> int:
    return EXIT_OK if verdict.passed else EXIT_REFUTED


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    doc, base = _load(args.space)
    sp = io.space_from_json(doc, args.space, base)
    if isinstance(sp, StreamedSpace):
        if args.horizon is None:
            raise UsageError("streamed spaces are validated on a prefix: pass --horizon")
        view = prefix(sp, args.horizon)
        _emit({"valid": True, "streamed": sp.name, "horizon": args.horizon, "points": list(view.points)}, args)
    else:
        _emit({"valid": True, "points": list(sp.points)}, args)
    return EXIT_OK


def cmd_order(args) -> int:
    doc, base = _load(args.space)
    sp = io.finite_space_from_json(doc, args.space, base)
    pairs = sorted(specialization_order(sp), key=lambda p: (sp.idx(p[0]), sp.idx(p[1])))
    _emit({"points": list(sp.points), "below": [[a, b] for a, b in pairs if a != b]}, args)
    return EXIT_OK


def _weight(path: str):
    doc, base = _load(path)
    return io.weight_from_json(doc, path, base)


def cmd_rho(args) -> int:
    phi, psi = _weight(args.phi), _weight(args.psi)
    _emit({"rho": fmt(rho(phi, psi))}, args)
    return EXIT_OK


def cmd_colim(args) -> int:
    phi = _weight(args.weight)
    _emit({"colimit": colimit_of(phi)}, args)
    return EXIT_OK


def cmd_ideal_check(args) -> int:
    phi = _weight(args.weight)
    res = is_ideal(phi)
    _emit({"ideal": res.ok, "witness": None if res.ok else list(res.witness)}, args)
    return EXIT_OK if res.ok else EXIT_REFUTED


def cmd_bounded_check(args) -> int:
    doc, base = _load(args.input)
    if isinstance(doc, dict) and ("prefix" in doc or "tail" in doc):
        net = io.net_from_json(doc, args.input, base)
        sup_into = None
        if isinstance(net.space, StreamedSpace):
            if args.horizon is None:
                raise UsageError("streamed nets need --horizon")
            if net.space.name == "qlo":
                sup_into = qlo_sup_into
        v = bounded_net_check(net, args.horizon, anchor=args.anchor, sup_into=sup_into)
        _emit({"bounded": v.bounded, "anchor": v.anchor,
               "radius": None if v.radius is None else fmt(v.radius),
               "horizon": v.horizon, "witness": v.witness}, args)
        return EXIT_OK if v.bounded else EXIT_REFUTED
    phi = io.weight_from_json(doc, args.input, base)
    res = is_bounded(phi)
    out = {"bounded": res.ok}
    if res.ok:
        out.update(anchor=res.witness[0], radius=fmt(res.witness[1]))
    _emit(out, args)
    return EXIT_OK if res.ok else EXIT_REFUTED


def cmd_ball_lub(args) -> int:
    doc, base = _load(args.balls)
    if isinstance(doc, dict):
        sp = io.finite_space_from_json(doc.get("space"), f"{args.balls}.space", base)
        items = doc.get("balls")
    else:
        raise io.SchemaError(args.balls, "expected {'space': ..., 'balls': [...]}")
    if not isinstance(items, list) or not items:
        raise io.SchemaError(f"{args.balls}.balls", "expected a nonempty list")
    balls = [io.ball_from_json(b, f"{args.balls}.balls[{i}]") for i, b in enumerate(items)]
    for b in balls:
        sp.idx(b.point)
    lub = lub_finite(sp, balls)
    _emit({"lub": None if lub is None else lub.to_json()}, args)
    return EXIT_OK


def cmd_family_join(args) -> int:
    doc, base = _load(args.family)
    if isinstance(doc, dict) and isinstance(doc.get("ideal"), str):
        # closed-form ideal on a streamed space, e.g. {"space": {"streamed": "qlo"}, "ideal": "zero"}
        sp = io.space_from_json(doc.get("space"), f"{args.family}.space", base)
        if not isinstance(sp, StreamedSpace):
            raise io.SchemaError(f"{args.family}.ideal", "named ideals exist only on streamed spaces")
        key = (sp.name, doc["ideal"])
        if key not in CLOSED_FORM_IDEALS:
            raise io.SchemaError(f"{args.family}.ideal", f"no closed-form ideal {doc['ideal']!r} on {sp.name}")
        if args.horizon is None:
            raise UsageError("streamed families need --horizon")
        offset = parse(str(doc.get("offset", "0")))
        inp = {"horizon": args.horizon, "ideal": key[1], "offset": fmt(offset)}
        v = streamed_family_refutation(streamed(sp.name), CLOSED_FORM_IDEALS[key], offset, args.horizon)
        _emit(record("qlo-local-dcpo", inp, v), args)
        return _verdict_exit(v)
    fam = io.family_from_json(doc, args.family, base)
    join = family_join_bruteforce(fam)
    _emit({"join": None if join is None else join.to_json(),
           "upper_bounds": [b.to_json() for b in family_upper_bounds(fam)]}, args)
    return EXIT_OK


def _battery_families(path: str | None, sp: FiniteSpace, radii) -> list[DirectedBallFamily]:
    if path is None:
        return representable_battery(sp, radii)
    doc, base = _load(path)
    batt = io.battery_from_json(doc, path, base)
    if batt.base != sp:
        raise SpaceMismatch("battery lives on a different space")
    return [DirectedBallFamily(m, t) for m in batt.members if is_ideal(m).ok for t in radii]


def _radii(args) -> list[Fraction]:
    if args.grid_step is None and args.grid_max is None:
        return default_radii()
    step = parse(args.grid_step or "1/2")
    top = parse(args.grid_max or "3")
    if step == 0 or step == float("inf") or top == float("inf"):
        raise UsageError("--grid-step must be positive and --grid-max finite")
    return [step * k for k in range(int(top / step) + 1)]


def cmd_waybelow(args) -> int:
    doc, base = _load(args.space)
    sp = io.finite_space_from_json(doc, args.space, base)
    radii = _radii(args)
    v = waybelow_verify(sp, distance_table(sp), _battery_families(args.battery, sp, radii), radii)
    inp = {"space": io.space_to_json(sp), "w": None, "radii": [fmt(r) for r in radii]}
    if args.battery is None:
        _emit(record("waybelow", inp, v), args)
    else:
        _emit({"verdict": v.to_dict()}, args)
    return _verdict_exit(v)


def cmd_closure(args) -> int:
    phi = _weight(args.weight)
    if args.battery is None:
        ideals = representables(phi.space)
    else:
        doc, base = _load(args.battery)
        batt = io.battery_from_json(doc, args.battery, base)
        if batt.base != phi.space:
            raise SpaceMismatch("battery lives on a different space")
        ideals = [m for m in batt.members if is_ideal(m).ok]
    c = closure(phi, ideals, args.cap)
    _emit(io.weight_to_json(c), args)
    return EXIT_OK


def cmd_suite(args) -> int:
    cfg = suite_config(args.name, seed=args.seed, trials=args.trials,
                       max_points=args.max_points, horizon=args.horizon)
    report = run_suite(args.name, cfg)
    _emit(report, args)
    return {"pass": EXIT_OK, "non-convergence": EXIT_NONCONVERGENCE}.get(report["status"], EXIT_REFUTED)


def cmd_replay(args) -> int:
    doc, _ = _load(args.witness)
    recs = records_of(doc)
    if not recs:
        raise RecordSchemaError("nothing to replay")
    code = EXIT_OK
    results = []
    for rec in recs:
        out = replay_record(rec)
        results.append({"check": out.check, "reproduced": out.reproduced, "status": out.status})
        if not out.reproduced:
            code = EXIT_REPLAY
        elif code == EXIT_OK and out.status == "non-convergence":
            code = EXIT_NONCONVERGENCE
        elif code == EXIT_OK and out.fresh is not None and out.status not in (
                "proven", "battery_passed", "passed_at_horizon"):
            code = EXIT_REFUTED
    _emit({"replayed": results}, args)
    if code == EXIT_REPLAY:
        print("replay did not reproduce the recorded verdict", file=sys.stderr)
    return code


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def hasse(nodes: list, leq) -> list[tuple[int, int]]:
    """Covering pairs (i, j): i < j strictly with nothing strictly between."""
    n = len(nodes)
    lt = [[i != j and leq(nodes[i], nodes[j]) for j in range(n)] for i in range(n)]
    return [(i, j) for i in range(n) for j in range(n)
            if lt[i][j] and not any(lt[i][k] and lt[k][j] for k in range(n))]


def export_dot(sp: FiniteSpace, kind: str = "order", step=None, top=None) -> str:
    if kind == "order":
        nodes = list(sp.points)
        names = nodes
        edges = hasse(nodes, lambda a, b: sp.d(a, b) == 0)
    elif kind == "balls":
        if step is None or top is None or step == float("inf") or step <= 0 or top == float("inf"):
            raise UsageError("balls export needs --grid-step > 0 and a finite --grid-max")
        radii = [step * k for k in range(int(top / step) + 1)]
        nodes = [FormalBall(p, r) for p in sp.points for r in radii]
        names = [f"{b.point}@{fmt(b.radius)}" for b in nodes]
        edges = hasse(nodes, lambda a, b: ball_leq(sp, a, b))
    else:
        raise UsageError(f"unknown export kind {kind!r}")
    lines = ["digraph G {"]
    lines += [f"  {_dot_id(s)};" for s in names]
    lines += [f"  {_dot_id(names[i])} -> {_dot_id(names[j])};" for i, j in edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_export_dot(args) -> int:
    doc, base = _load(args.space)
    sp = io.finite_space_from_json(doc, args.space, base)
    step = parse(args.grid_step) if args.grid_step is not None else None
    top = parse(args.grid_max) if args.grid_max is not None else None
    _emit(export_dot(sp, args.kind, step, top), args)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qmdomain", description="Exact toolkit for finite quasi-metric spaces.")
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        sp.add_argument("--out", help="write the output document here instead of stdout")
        return sp

    c = cmd("validate", cmd_validate, "check the quasi-metric axioms of a space file")
    c.add_argument("space")
    c.add_argument("--horizon", type=int)
    c = cmd("order", cmd_order, "specialization order")
    c.add_argument("space")
    c = cmd("rho", cmd_rho, "rho(phi, psi) between two weights")
    c.add_argument("--phi", required=True)
    c.add_argument("--psi", required=True)
    c = cmd("colim", cmd_colim, "colimit of a weight, if any")
    c.add_argument("weight")
    c = cmd("ideal-check", cmd_ideal_check, "decide whether a weight is an ideal")
    c.add_argument("weight")
    c = cmd("bounded-check", cmd_bounded_check, "boundedness of a weight or a net")
    c.add_argument("input")
    c.add_argument("--horizon", type=int)
    c.add_argument("--anchor")
    c = cmd("ball-lub", cmd_ball_lub, "least upper bound of finitely many formal balls")
    c.add_argument("balls")
    c = cmd("family-join", cmd_family_join, "join of a directed ball family")
    c.add_argument("family")
    c.add_argument("--horizon", type=int)
    c = cmd("waybelow", cmd_waybelow, "verify the way-below characterisation with w = d")
    c.add_argument("space")
    c.add_argument("--battery")
    c.add_argument("--grid-step")
    c.add_argument("--grid-max")
    c = cmd("closure", cmd_closure, "closure of a weight against battery ideals")
    c.add_argument("weight")
    c.add_argument("--battery")
    c.add_argument("--cap", type=int, default=64)
    c = cmd("suite", cmd_suite, "run a named property suite")
    c.add_argument("name", choices=sorted(SUITES))
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--trials", type=int)
    c.add_argument("--max-points", type=int)
    c.add_argument("--horizon", type=int)
    c = cmd("replay", cmd_replay, "re-execute a witness record or report")
    c.add_argument("witness")
    c = cmd("export-dot", cmd_export_dot, "Hasse diagram of the order or of the ball order")
    c.add_argument("space")
    c.add_argument("--kind", choices=["order", "balls"], default="order")
    c.add_argument("--grid-step")
    c.add_argument("--grid-max")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except NonConvergence as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (io.SchemaError, EncodingError, AxiomViolation, WeightInequalityError, SpaceMismatch,
            RecordSchemaError, UnknownCheck, UnknownSuite, UsageError, KeyError, ValueError,
            OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
