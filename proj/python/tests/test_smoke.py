import math

import pytest

import crossdock_sim as cs


SHORT = "model:\n  replication_length_min: 1440\n"


def test_replication_is_deterministic():
    a = cs.run_replication(SHORT, seed=7, index=2)
    b = cs.run_replication(SHORT, seed=7, index=2)
    assert a == b
    assert a["created"] == a["disposed"] + a["in_system"]
    for u in a["ledger"]:
        assert u["busy_min"] >= 0
    assert cs.run_replication(SHORT, seed=8, index=2) != a


def test_idle_only_cost():
    cfg = SHORT + "  arrivals:\n    mean_interarrival_min: .inf\n"
    r = cs.run_replication(cfg)
    assert r["created"] == 0
    assert r["total_usage_cost"] == pytest.approx(30 * 4 * 16)


def test_experiment_fixed_and_sequential():
    out = cs.run_experiment(SHORT, mode="fixed:5")
    assert out["n"] == 5 and len(out["costs"]) == 5
    assert out["stop_reason"] == "fixed-complete"
    seq = cs.run_experiment(SHORT, variant="buffered-crn", mode="sequential", workers=2)
    assert seq["stop_reason"] in ("target-met", "cap-reached")


def test_paired_t_fixture():
    r = cs.compare_means([1, 2, 3], [2, 4, 6])
    assert r["estimate"] == pytest.approx(-2)
    assert r["ci_low"] == pytest.approx(-4.484137712, rel=1e-8)
    assert not r["reject"]
    assert "ESTD. MEAN DIFFERENCE" in r["report"]
    v = cs.compare_variances([1, 2, 3], [2, 4, 6])
    assert v["estimate"] == pytest.approx(0.25)
    assert "VARIANCE RATIO" in v["report"]


def test_quantiles_and_planning():
    assert cs.student_t_quantile(0.975, 2) == pytest.approx(4.30265273, rel=1e-8)
    assert cs.fisher_f_quantile(0.975, 499, 499) == pytest.approx(1.192057402, rel=1e-8)
    assert cs.expected_replications(1.0, 1.0) == 4
    assert cs.half_width([1, 2, 3]) == pytest.approx(2.484137712, rel=1e-8)
    assert cs.half_width([5]) is None


def test_trace_and_validate():
    lines = cs.trace_replication(variant="buffered", length=30)
    kinds = {k for _, k, _, _ in lines}
    assert {"create", "buffer-start", "end-replication"} <= kinds
    assert all(t <= 30 for t, _, _, _ in lines)
    ok, text = cs.validate(SHORT)
    assert ok, text


def test_config_errors():
    with pytest.raises(cs.ConfigError):
        cs.run_replication("model:\n  colour: red\n")
    with pytest.raises(ValueError):
        cs.run_replication(SHORT, variant="model-9")


def test_archive_round_trip(tmp_path):
    import subprocess, shutil
    cli = shutil.which("crossdock")
    if cli is None:
        pytest.skip("crossdock CLI not on PATH")
    path = tmp_path / "run.csv"
    subprocess.run([cli, "run", "--mode", "fixed:3", "--out", str(path)], check=True)
    a = cs.read_archive(str(path))
    assert len(a["costs"]) == 3 and a["footer_matches_rows"]


def test_default_config_text():
    text = cs.default_config_yaml()
    assert "replication_length_min: 28800" in text
    assert math.isfinite(float(text.split("root_seed: ")[1].split()[0]))
