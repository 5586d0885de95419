from fractions import Fraction

import pytest

from qmdomain.space import singleton, validate
from qmdomain.verification.checks import UnknownCheck, record, run_check
from qmdomain.verification.gen import GenConfig, gen_spaces, gen_weights
from qmdomain.verification.oracles import (CarrierTooLarge, exhaustive_j_below, grid_lub_oracle, ideal_gate,
                                           oracle_ideal_enumeration)
from qmdomain.verification.replay import replay_record
from qmdomain.verification.suites import UnknownSuite, run_suite, suite_config, without_timing
from qmdomain.formal_balls import FormalBall, lub_finite
from qmdomain.weights import representables, yoneda


def _take(it, n):
    return [next(it) for _ in range(n)]


def test_gen_spaces_deterministic():
    cfg = GenConfig(seed=3)
    assert _take(gen_spaces(cfg), 20) == _take(gen_spaces(cfg), 20)
    assert _take(gen_spaces(cfg), 20) != _take(gen_spaces(GenConfig(seed=4)), 20)


def test_single_point_config():
    for sp in _take(gen_spaces(GenConfig(max_points=1)), 5):
        assert sp == singleton() or len(sp) == 1


def test_config_validation():
    with pytest.raises(ValueError):
        GenConfig(max_points=7)
    with pytest.raises(ValueError):
        GenConfig(entry_grid=(1, 2))


def test_gen_weights(S2):
    ws = gen_weights(S2, GenConfig())
    vals = [w.values for w in ws]
    for y in representables(S2):
        assert y.values in vals
    assert (0, 0) in vals
    assert len(set(vals)) == len(vals)


def test_oracle_examples(S2, S2z, star):
    assert {w.values for w in oracle_ideal_enumeration(S2)} == {(0, 2), (1, 0)}
    assert [w.values for w in oracle_ideal_enumeration(star)] == [(0,)]
    assert {w.values for w in oracle_ideal_enumeration(S2z)} == {(0, 1), (0, 0)}


def test_oracle_rejects_large_carriers():
    big = validate("abcd", [[0 if i == j else 1 for j in range(4)] for i in range(4)])
    with pytest.raises(CarrierTooLarge):
        oracle_ideal_enumeration(big)
    with pytest.raises(CarrierTooLarge):
        ideal_gate(big)


def test_gate_on_S2(S2):
    g = ideal_gate(S2)
    assert g["disagreement"] is None and g["ideals"] == 2


def test_grid_lub_oracle(S2):
    balls = [FormalBall("a", 2), FormalBall("b", 1)]
    assert grid_lub_oracle(S2, balls) == lub_finite(S2, balls)


def test_exhaustive_j_below_is_d(S2):
    table, ideals = exhaustive_j_below(S2)
    assert table == S2.dist and len(ideals) == 2


def test_record_and_replay(S2):
    inp = {"space": {"points": ["a", "b"], "dist": [["0", "1"], ["2", "0"]]}, "phi": ["0", "0"]}
    v = run_check("yoneda-lemma", inp)
    rec = record("yoneda-lemma", inp, v)
    assert replay_record(rec).reproduced
    rec["verdict"]["status"] = "refuted"
    assert not replay_record(rec).reproduced


def test_unknown_names():
    with pytest.raises(UnknownCheck):
        run_check("nope", {})
    with pytest.raises(UnknownSuite):
        suite_config("nope")


def test_suite_overrides_ignore_none():
    cfg = suite_config("yoneda-lemma", 5, trials=None, max_points=3)
    assert cfg.trials == 500 and cfg.max_points == 3 and cfg.seed == 5


def test_small_suite_runs_are_deterministic():
    cfg = suite_config("j-algebra-theorem", 1, trials=10)
    a, b = run_suite("j-algebra-theorem", cfg), run_suite("j-algebra-theorem", cfg)
    assert a["status"] == "pass"
    assert without_timing(a) == without_timing(b)


def test_qlo_suite_reports_expected_refutations():
    rep = run_suite("qlo-refutations", suite_config("qlo-refutations"))
    assert rep["status"] == "pass"
    assert {c["check"] for c in rep["checks"]} == {"qlo-j-algebra", "qlo-local-dcpo"}
    assert all(c["refutations"] == 1 for c in rep["checks"])
    for rec in rep["witnesses"]:
        out = replay_record(rec)
        assert out.reproduced and out.status == "refuted_at_horizon"
