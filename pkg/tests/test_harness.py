import random

import pytest

from bftest import boolfn
from bftest import harness
from bftest.boolfn import ClassDesc
from bftest.harness import (Classification, ExperimentConfig,
                            classify_instance, generate_instance,
                            report_json, run_experiment, run_trial,
                            trials_needed)


def test_classify_instance_in_class():
    spec = boolfn.LinearF2(5, frozenset({1, 3}))
    c = classify_instance(spec, ClassDesc("junta", k=2), 0.1)
    assert c == Classification("InClass", 0.0)


def test_classify_instance_eps_far():
    spec = boolfn.LinearF2(5, frozenset({1, 2, 3}))
    c = classify_instance(spec, ClassDesc("junta", k=1), 0.25)
    assert c.kind == "EpsFar"
    assert c.distance == 0.5  # any 1-junta misses a 3-parity on half the cube


def test_classify_instance_neither():
    # a 2-junta with one truth-table cell flipped: close to, not in, the class
    tbl = bytearray(boolfn.LinearF2(5, frozenset({1, 2})).truth_table().tolist())
    tbl[0] ^= 1
    spec = boolfn.TruthTable(5, bytes(tbl))
    c = classify_instance(spec, ClassDesc("junta", k=2), 0.2)
    assert c.kind == "Neither"
    assert c.distance == pytest.approx(1 / 32)


def test_classify_instance_uncertified_on_refusal():
    rng = random.Random(11)
    spec = boolfn.TruthTable(12, bytes(rng.getrandbits(1) for _ in range(1 << 12)))
    c = classify_instance(spec, ClassDesc("dnf", s=4), 0.1)
    assert c.kind == "Uncertified" and c.distance is None


def test_trials_needed():
    assert trials_needed(0.1, 0.95) == 150
    assert trials_needed(0.2, 0.95) == trials_needed(0.1, 0.95) // 4 + 1
    with pytest.raises(ValueError):
        trials_needed(0.0, 0.95)
    with pytest.raises(ValueError):
        trials_needed(0.1, 1.0)


@pytest.mark.parametrize("cls", sorted(harness.CLASSES))
def test_generate_member_is_certified(cls):
    rng = random.Random(21)
    spec = generate_instance(cls, {}, rng, want="member", epsilon=0.2)
    desc = harness.CLASSES[cls].desc
    assert classify_instance(spec, desc, 0.2).kind == "InClass"


@pytest.mark.parametrize("cls", sorted(harness.CLASSES))
def test_generate_far_is_certified(cls):
    rng = random.Random(22)
    spec = generate_instance(cls, {"n": 10}, rng, want="far", epsilon=0.15)
    desc = harness.CLASSES[cls].desc
    c = classify_instance(spec, desc, 0.15)
    assert c.kind == "EpsFar" and c.distance > 0.15


def test_run_experiment_deterministic():
    cfg = ExperimentConfig(cls="junta", epsilon=0.2, trials=5, seed=31337,
                           params={"n": 12})
    a, _ = run_experiment(cfg)
    b, _ = run_experiment(cfg)
    assert report_json(a) == report_json(b)


def test_run_experiment_member_mostly_accepts():
    cfg = ExperimentConfig(cls="linear", epsilon=0.2, trials=10, seed=7,
                           params={"n": 12})
    rep, trials = run_experiment(cfg)
    assert rep["accept_rate"] >= 0.7
    assert all(t.ledger["mq"] > 0 for t in trials)


def test_run_experiment_far_rejects_with_stage_accounting():
    cfg = ExperimentConfig(cls="linear", epsilon=0.2, trials=6, seed=8,
                           params={"n": 10}, want="far")
    rep, trials = run_experiment(cfg)
    assert rep["accept_rate"] <= 0.3
    assert sum(rep["stage_rejects"].values()) == sum(
        t.outcome != "Accept" for t in trials)


def test_run_trial_captures_crashes():
    class Broken:
        n = 12

        def evaluate(self, x):
            raise RuntimeError("boom")

    cfg = ExperimentConfig(cls="junta", trials=1, params={"n": 12},
                           instances=[Broken()])
    t = run_trial(cfg, Broken(), 5)
    assert t.outcome == "Fail"
    assert t.stage_reached == "fail:RuntimeError"


def test_budget_cap_marks_failure():
    rng = random.Random(9)
    spec = generate_instance("junta", {"n": 12}, rng)
    cfg = ExperimentConfig(cls="junta", trials=1, params={"n": 12},
                           instances=[spec], budget_cap=1)
    t = run_trial(cfg, spec, 5)
    assert t.outcome == "Fail" and t.stage_reached == "fail:budget_cap"


def test_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig(cls="nope")
    with pytest.raises(ValueError):
        ExperimentConfig(cls="junta", trials=0)
    with pytest.raises(ValueError):
        ExperimentConfig(cls="dnf", model="distribution_free")


def test_report_shape():
    cfg = ExperimentConfig(cls="term", epsilon=0.2, trials=3, seed=12,
                           params={"n": 10})
    rep, _ = run_experiment(cfg)
    assert set(rep) == {"accept_rate", "ci95", "queries", "stage_rejects",
                        "seed", "config_echo"}
    assert set(rep["queries"]) == {"mq", "exq", "wexq"}
    for st in rep["queries"].values():
        assert st["min"] <= st["median"] <= st["max"]
    assert rep["ci95"][0] <= rep["accept_rate"] <= rep["ci95"][1]
