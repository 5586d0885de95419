"""JSON encodings of spaces, weights, distributors, nets, balls, families, batteries.

All numbers use the exact textual encoding ("p/q", integers, "inf").  A nested
"space" entry may be an inline object, a path (resolved against the referring
file), or a streamed space reference such as {"streamed": "qlo"}.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .distributors import Distributor, distributor
from .formal_balls import DirectedBallFamily, FormalBall
from .ideals import NetPresentation
from .monadics import Battery, battery
from .numerics import DEFAULT_DENOMINATOR_CAP, fmt, parse
from .space import AxiomViolation, FiniteSpace, validate
from .streamed import NETS, StreamedSpace, streamed
from .weights import Weight, weight


class SchemaError(ValueError):
    """A document does not match the expected schema; ``where`` locates the problem."""

    def __init__(self, where: str, msg: str):
        self.where = where
        super().__init__(f"{where}: {msg}")


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=False, ensure_ascii=False) + "\n"


def canonical(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def load_file(path: str | Path) -> Any:
    path = Path(path)
    text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}:{e.lineno}:{e.colno}", e.msg) from None


def _num(text, where: str, cap: int | None):
    if not isinstance(text, str):
        if isinstance(text, int) and not isinstance(text, bool):
            text = str(text)
        else:
            raise SchemaError(where, f"expected a number string, got {text!r}")
    try:
        return parse(text, cap)
    except ValueError as e:
        raise SchemaError(where, str(e)) from None


# ---------------------------------------------------------------------------
# spaces


def space_to_json(space: FiniteSpace | StreamedSpace) -> dict:
    if isinstance(space, StreamedSpace):
        return {"streamed": space.name}
    return {"points": list(space.points), "dist": [[fmt(v) for v in row] for row in space.dist]}


def space_from_json(doc, where: str = "space", base: Path | None = None,
                    cap: int | None = DEFAULT_DENOMINATOR_CAP) -> FiniteSpace | StreamedSpace:
    if isinstance(doc, str):
        path = (base / doc) if base is not None else Path(doc)
        return space_from_json(load_file(path), str(path), path.parent, cap)
    if not isinstance(doc, dict):
        raise SchemaError(where, "expected an object")
    if "streamed" in doc:
        try:
            return streamed(doc["streamed"])
        except KeyError as e:
            raise SchemaError(where, str(e)) from None
    for key in ("points", "dist"):
        if key not in doc:
            raise SchemaError(where, f"missing {key!r}")
    pts = doc["points"]
    if not isinstance(pts, list) or not all(isinstance(p, str) for p in pts):
        raise SchemaError(f"{where}.points", "expected a list of strings")
    rows = doc["dist"]
    if not isinstance(rows, list) or len(rows) != len(pts):
        raise SchemaError(f"{where}.dist", f"expected {len(pts)} rows")
    table = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != len(pts):
            raise SchemaError(f"{where}.dist[{i}]", f"expected {len(pts)} entries")
        table.append([_num(v, f"{where}.dist[{i}][{j}]", cap) for j, v in enumerate(row)])
    try:
        return validate(pts, table)
    except AxiomViolation as e:
        raise SchemaError(where, str(e)) from e


def finite_space_from_json(doc, where: str = "space", base: Path | None = None) -> FiniteSpace:
    sp = space_from_json(doc, where, base)
    if not isinstance(sp, FiniteSpace):
        raise SchemaError(where, "a finite space is required here")
    return sp


# ---------------------------------------------------------------------------
# weights


def weight_to_json(phi: Weight, with_space: bool = True) -> dict:
    doc = {"values": [fmt(v) for v in phi.values]}
    if with_space:
        doc = {"space": space_to_json(phi.space), **doc}
    return doc


def weight_from_json(doc, where: str = "weight", base: Path | None = None,
                     space: FiniteSpace | None = None) -> Weight:
    if isinstance(doc, list):
        doc = {"values": doc}
    if not isinstance(doc, dict) or "values" not in doc:
        raise SchemaError(where, "expected an object with 'values'")
    if "space" in doc:
        sp = finite_space_from_json(doc["space"], f"{where}.space", base)
        if space is not None and sp != space:
            raise SchemaError(where, "weight lives on a different space")
    elif space is not None:
        sp = space
    else:
        raise SchemaError(where, "missing 'space'")
    vals = doc["values"]
    if not isinstance(vals, list):
        raise SchemaError(f"{where}.values", "expected a list")
    nums = [_num(v, f"{where}.values[{i}]", DEFAULT_DENOMINATOR_CAP) for i, v in enumerate(vals)]
    try:
        return weight(sp, nums)
    except ValueError as e:
        raise SchemaError(where, str(e)) from None


# ---------------------------------------------------------------------------
# distributors


def distributor_to_json(phi: Distributor) -> dict:
    return {"source": space_to_json(phi.source), "target": space_to_json(phi.target),
            "values": [[fmt(v) for v in row] for row in phi.values]}


def distributor_from_json(doc, where: str = "distributor", base: Path | None = None) -> Distributor:
    if not isinstance(doc, dict):
        raise SchemaError(where, "expected an object")
    for key in ("source", "target", "values"):
        if key not in doc:
            raise SchemaError(where, f"missing {key!r}")
    src = finite_space_from_json(doc["source"], f"{where}.source", base)
    tgt = finite_space_from_json(doc["target"], f"{where}.target", base)
    rows = [[_num(v, f"{where}.values[{i}][{j}]", DEFAULT_DENOMINATOR_CAP) for j, v in enumerate(r)]
            for i, r in enumerate(doc["values"])]
    try:
        return distributor(src, tgt, rows)
    except ValueError as e:
        raise SchemaError(where, str(e)) from None


# ---------------------------------------------------------------------------
# nets, balls, families, batteries


def net_to_json(net: NetPresentation) -> dict:
    tail: Any = "constant" if net.tail is None else {"streamed": net.tail_name}
    return {"space": space_to_json(net.space), "prefix": list(net.prefix), "tail": tail}


def net_from_json(doc, where: str = "net", base: Path | None = None) -> NetPresentation:
    if not isinstance(doc, dict):
        raise SchemaError(where, "expected an object")
    tail = doc.get("tail", "constant")
    prefix = tuple(doc.get("prefix", []))
    if tail == "constant":
        sp = finite_space_from_json(doc.get("space"), f"{where}.space", base)
        if not prefix:
            raise SchemaError(f"{where}.prefix", "a constant-tail net needs a nonempty prefix")
        for i, p in enumerate(prefix):
            if p not in sp.points:
                raise SchemaError(f"{where}.prefix[{i}]", f"unknown point {p!r}")
        return NetPresentation(sp, prefix)
    if isinstance(tail, dict) and "streamed" in tail:
        name = tail["streamed"]
        if name not in NETS:
            raise SchemaError(f"{where}.tail", f"unknown streamed net {name!r}")
        space_name, fn = NETS[name]
        sp = streamed(space_name) if "space" not in doc else space_from_json(doc["space"], f"{where}.space", base)
        return NetPresentation(sp, prefix, fn, name)
    raise SchemaError(f"{where}.tail", f"unsupported tail {tail!r}")


def ball_to_json(b: FormalBall) -> dict:
    return b.to_json()


def ball_from_json(doc, where: str = "ball") -> FormalBall:
    if not isinstance(doc, dict) or "point" not in doc or "radius" not in doc:
        raise SchemaError(where, "expected {'point': ..., 'radius': ...}")
    r = _num(doc["radius"], f"{where}.radius", DEFAULT_DENOMINATOR_CAP)
    try:
        return FormalBall(str(doc["point"]), r)
    except ValueError as e:
        raise SchemaError(where, str(e)) from None


def family_to_json(fam: DirectedBallFamily) -> dict:
    return {"ideal": weight_to_json(fam.ideal), "offset": fmt(fam.offset)}


def family_from_json(doc, where: str = "family", base: Path | None = None,
                     space: FiniteSpace | None = None) -> DirectedBallFamily:
    if not isinstance(doc, dict) or "ideal" not in doc:
        raise SchemaError(where, "expected {'ideal': ..., 'offset': ...}")
    phi = weight_from_json(doc["ideal"], f"{where}.ideal", base, space)
    off = _num(doc.get("offset", "0"), f"{where}.offset", DEFAULT_DENOMINATOR_CAP)
    from .formal_balls import family
    try:
        return family(phi, off)
    except ValueError as e:
        raise SchemaError(where, str(e)) from None


def battery_to_json(batt: Battery) -> dict:
    return {"space": space_to_json(batt.base),
            "members": [weight_to_json(m, with_space=False) for m in batt.members]}


def battery_from_json(doc, where: str = "battery", base: Path | None = None) -> Battery:
    if not isinstance(doc, dict) or "space" not in doc or "members" not in doc:
        raise SchemaError(where, "expected {'space': ..., 'members': [...]}")
    sp = finite_space_from_json(doc["space"], f"{where}.space", base)
    members = [weight_from_json(m, f"{where}.members[{i}]", base, sp) for i, m in enumerate(doc["members"])]
    try:
        return battery(sp, members)
    except ValueError as e:
        raise SchemaError(where, str(e)) from None
