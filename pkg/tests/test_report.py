"""Report assembly: statuses, counts, schema, cross-process determinism."""
import json
import os
import subprocess
import sys

from wavesym.report import CampaignReport, CaseReport, FAIL, PASS, WARN


def test_status_aggregation():
    rep = CaseReport("demo")
    rep.add("a", True)
    assert rep.status == PASS
    rep.warn("b", "undecided sample")
    assert rep.status == WARN
    rep.add("c", False, "boom")
    assert rep.status == FAIL


def test_campaign_counts_and_schema():
    camp = CampaignReport(seed=7)
    ok = CaseReport("one")
    ok.add("x", True)
    warned = CaseReport("two")
    warned.warn("y")
    camp.section("s").extend([ok, warned])
    payload = json.loads(camp.to_json())
    assert payload["schema"] == "wavesym-report/1"
    assert payload["seed"] == 7
    assert payload["counts"] == {"pass": 1, "fail": 0, "warn": 1}
    assert payload["status"] == "warn"
    assert "wall" not in camp.to_json()  # timing stays out of the JSON


def test_reports_identical_across_hash_seeds(tmp_path):
    """The machine-readable report must not depend on Python's per-process
    hash randomization."""
    outs = []
    for hash_seed in ("1", "2"):
        out = tmp_path / f"r{hash_seed}.json"
        env = dict(os.environ, PYTHONHASHSEED=hash_seed)
        res = subprocess.run(
            [sys.executable, "-m", "wavesym.cli", "verify", "reductions",
             "--seed", "4", "--report", str(out), "--format", "json"],
            env=env, capture_output=True, text=True, timeout=300)
        assert res.returncode == 0, res.stderr
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
