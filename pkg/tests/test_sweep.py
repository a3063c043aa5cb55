import json
import math

import numpy as np
import pytest

from qswitch.sweep import SweepPlan, default_plan, export, load_csv, run_sweep


def small_plan(protocol, n, metric="auto"):
    return default_plan(protocol, n, lambda_steps=9, alpha_steps=5, metric=metric)


def test_plan_validation():
    with pytest.raises(ValueError):
        SweepPlan("bell", 2, [], [0.0, 1.0])
    with pytest.raises(ValueError):
        SweepPlan("bell", 2, [0.3, 0.2], [0.0, 1.0])
    with pytest.raises(ValueError):
        SweepPlan("bell", 2, [0.0, 2.0], [0.0, 1.0])
    with pytest.raises(ValueError):
        SweepPlan("bell", 2, [0.0, 1.0], [0.0, 1.5])
    with pytest.raises(ValueError):
        SweepPlan("bell", 2, [0.0, 1.0], [0.0, 1.0], metric="negativity")


def test_metric_resolution():
    assert small_plan("bell", 2).resolved_metric() == "concurrence"
    assert small_plan("ghz", 3).resolved_metric() == "gme_concurrence"
    assert small_plan("w", 3).resolved_metric() == "gme_concurrence"


def test_record_count_and_order():
    plan = small_plan("w", 3)
    records = run_sweep(plan, threads=1)
    assert len(records) == 9 * 5 * 4  # lambda x alpha x outcome
    keys = [(r.lam, r.alpha, r.outcome) for r in records]
    assert keys == sorted(keys)


def test_ridge_alpha_independent():
    plan = SweepPlan("ghz", 3, [math.pi / 4], list(np.linspace(0, 1, 7)))
    for r in run_sweep(plan, threads=1):
        assert r.reachable
        assert abs(r.metric_value - 1.0) <= 1e-9


def test_edges_separable():
    plan = SweepPlan("bell", 2, [0.0, math.pi / 2], list(np.linspace(0, 1, 5)))
    for r in run_sweep(plan, threads=1):
        if r.reachable:
            assert r.metric_value <= 1e-9
        else:
            assert r.metric_value is None


def test_plus_branch_symmetry():
    lams = [math.pi / 8, math.pi / 4, 3 * math.pi / 8]
    plan = SweepPlan("bell", 2, lams, [0.3])
    by_lam = {
        round(r.lam, 12): r.metric_value
        for r in run_sweep(plan, threads=1)
        if r.outcome == "+"
    }
    assert abs(by_lam[round(math.pi / 8, 12)] - by_lam[round(3 * math.pi / 8, 12)]) <= 1e-9


def test_export_empty_csv(tmp_path):
    path = tmp_path / "empty.csv"
    export([], "csv", str(path))
    assert path.read_text() == "lambda,alpha,outcome,probability,metric,reachable\n"


def test_export_json_round_trip(tmp_path):
    plan = small_plan("bell", 2)
    records = run_sweep(plan, threads=1)
    path = tmp_path / "out.json"
    export(records, "json", str(path))
    docs = json.loads(path.read_text())
    assert len(docs) == len(records)
    for doc, rec in zip(docs, records):
        assert abs(doc["lambda"] - rec.lam) <= 1e-11
        assert doc["reachable"] == rec.reachable


def test_export_csv_round_trip(tmp_path):
    plan = small_plan("ghz", 3)
    records = run_sweep(plan, threads=1)
    path = tmp_path / "out.csv"
    export(records, "csv", str(path))
    loaded = load_csv(str(path))
    for a, b in zip(loaded, records):
        assert a.outcome == b.outcome and a.reachable == b.reachable
        assert abs(a.lam - b.lam) <= 1e-11
        if b.metric_value is not None:
            assert abs(a.metric_value - b.metric_value) <= 1e-11


def test_rerun_determinism(tmp_path):
    plan = small_plan("bell", 2)
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    export(run_sweep(plan, threads=1), "csv", str(p1))
    export(run_sweep(plan, threads=1), "csv", str(p2))
    assert p1.read_bytes() == p2.read_bytes()
    fresh = run_sweep(plan, threads=1)
    reloaded = load_csv(str(p1))
    deltas = [
        abs(a.metric_value - b.metric_value)
        for a, b in zip(reloaded, fresh)
        if b.metric_value is not None
    ]
    assert max(deltas) < 1e-11


def test_thread_count_invariance(tmp_path):
    plan = small_plan("w", 3)
    p1, p4 = tmp_path / "t1.csv", tmp_path / "t4.csv"
    export(run_sweep(plan, threads=1), "csv", str(p1))
    export(run_sweep(plan, threads=4), "csv", str(p4))
    assert p1.read_bytes() == p4.read_bytes()


def test_export_unknown_format(tmp_path):
    with pytest.raises(ValueError):
        export([], "yaml", str(tmp_path / "x"))


def test_export_io_error(tmp_path):
    with pytest.raises(OSError):
        export([], "csv", str(tmp_path / "missing" / "x.csv"))
