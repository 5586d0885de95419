import json
from pathlib import Path

import pytest

from qmdomain.cli import main

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr()


def s(name):
    return SAMPLES / name


def test_validate(capsys):
    code, out = run(capsys, "validate", s("s2.json"))
    assert code == 0 and json.loads(out.out)["valid"] is True


def test_validate_reports_position(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"points": ["a"], "dist": [["0"],]}')
    code, out = run(capsys, "validate", bad)
    assert code == 1 and f"{bad}:1:" in out.err


def test_validate_streamed_needs_horizon(capsys):
    assert run(capsys, "validate", s("qlo.json"))[0] == 1
    assert run(capsys, "validate", s("qlo.json"), "--horizon", 6)[0] == 0


def test_rho(capsys):
    code, out = run(capsys, "rho", "--phi", s("ya.json"), "--psi", s("yb.json"))
    assert code == 0 and json.loads(out.out)["rho"] == "1"


def test_ideal_and_bounded_checks(capsys):
    assert run(capsys, "ideal-check", s("ya.json"))[0] == 0
    assert run(capsys, "ideal-check", s("zero_s2.json"))[0] == 2
    assert run(capsys, "bounded-check", s("net_const.json"))[0] == 0
    code, out = run(capsys, "bounded-check", s("qlo_ascending.json"), "--horizon", 32)
    doc = json.loads(out.out)
    assert code == 0 and doc["anchor"] == "0" and doc["radius"] == "1"


def test_colim_and_order(capsys):
    code, out = run(capsys, "colim", s("yb.json"))
    assert code == 0 and "b" in out.out
    assert run(capsys, "order", s("s2z.json"))[0] == 0


def test_ball_lub_and_family_join(capsys):
    assert run(capsys, "ball-lub", s("s2_balls.json"))[0] == 0
    assert run(capsys, "family-join", s("s2_family.json"))[0] == 0


def test_closure(capsys):
    code, out = run(capsys, "closure", s("zero_s2.json"), "--battery", s("s2_battery.json"))
    assert code == 0


def test_suite_yoneda(capsys):
    code, out = run(capsys, "suite", "yoneda-lemma", "--seed", 7, "--trials", 500)
    doc = json.loads(out.out)
    assert code == 0 and doc["status"] == "pass"
    assert doc["checks"][0]["instances"] == 500


def test_unknown_suite_is_usage_error(capsys):
    with pytest.raises(SystemExit):
        main(["suite", "no-such-suite"])


@pytest.mark.parametrize("kind,name,extra,expected", [
    ("order", "s2.json", [], ['"a";', '"b";']),
    ("order", "s2z.json", [], ['"a" -> "b";']),
    ("balls", "singleton.json", ["--grid-step", "1", "--grid-max", "2"],
     ['"*@2" -> "*@1";', '"*@1" -> "*@0";']),
])
def test_export_dot(capsys, kind, name, extra, expected):
    code, out = run(capsys, "export-dot", s(name), "--kind", kind, *extra)
    assert code == 0 and out.out.startswith("digraph")
    for line in expected:
        assert line in out.out
    if name == "s2.json":
        assert "->" not in out.out


def test_export_dot_bad_grid(capsys):
    assert run(capsys, "export-dot", s("s2.json"), "--kind", "balls", "--grid-step", "0",
               "--grid-max", "2")[0] == 1


def test_replay_refutation_pass_and_tamper(capsys, tmp_path):
    w = tmp_path / "w.json"
    assert run(capsys, "family-join", s("qlo_family.json"), "--horizon", 32, "--out", w)[0] == 2
    assert run(capsys, "replay", w)[0] == 2
    p = tmp_path / "p.json"
    assert run(capsys, "waybelow", s("s2.json"), "--out", p)[0] == 0
    assert run(capsys, "replay", p)[0] == 0
    doc = json.loads(w.read_text())
    doc["verdict"]["witness"]["upper_bound"]["radius"] = "1/2"
    t = tmp_path / "t.json"
    t.write_text(json.dumps(doc))
    assert run(capsys, "replay", t)[0] == 4


def test_replay_schema_error(capsys, tmp_path):
    t = tmp_path / "t.json"
    t.write_text('{"format": 1}')
    assert run(capsys, "replay", t)[0] == 1


def test_output_is_byte_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "family-join", s("qlo_family.json"), "--horizon", 32, "--out", a)
    run(capsys, "family-join", s("qlo_family.json"), "--horizon", 32, "--out", b)
    assert a.read_bytes() == b.read_bytes()
