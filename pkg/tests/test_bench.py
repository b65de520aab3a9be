from dataclasses import asdict

import pytest

from rqcs.bench import bench, resolve_instances, rows_to_csv, run_trial, summarize
from rqcs.params import setup


def strip_times(r):
    d = asdict(r)
    for k in ("step1_seconds", "step2_seconds", "total_seconds"):
        d.pop(k)
    return d


def test_trial_reproducible():
    p = setup("rqcs-1")
    a, b = run_trial(p, b"\x01", 0), run_trial(p, b"\x01", 0)
    assert strip_times(a) == strip_times(b)
    assert a.success and a.forgery_verified


def test_single_trial_rerunnable_in_isolation():
    p = setup("custom", m=12, n=10, w=2, w_g=2, w_r=2)
    _, results = bench([p], 5, b"seed")
    again = run_trial(p, b"seed", 3)
    assert strip_times(results[3]) == strip_times(again)


def test_resolve_instances():
    assert [p.name for p in resolve_instances("all")] == ["rqcs-1", "rqcs-2", "rqcs-3"]
    assert [p.name for p in resolve_instances("rqcs-2")] == ["rqcs-2"]


def test_trials_must_be_positive():
    with pytest.raises(ValueError):
        bench([setup("rqcs-1")], 0, b"")


def test_small_instance_success_rate():
    p = setup("custom", m=12, n=10, w=2, w_g=2, w_r=2)
    rows, results = bench([p], 200, b"pf")
    row = rows[0]
    assert 0.0 <= row.success_rate <= 1.0 and row.trials == 200
    p_f = 1 - row.success_rate
    print(f"small instance: success_rate={row.success_rate:.3f} p_f={p_f:.3f} "
          f"mean_retries={row.mean_retries:.2f}")
    assert row.success_rate > 0.9


def test_summary_and_csv():
    p = setup("rqcs-1")
    row = summarize(p, [run_trial(p, b"\x02", 0)])
    assert row.params == (2, 89, 67, 5) and row.claimed_security == 128
    assert rows_to_csv([row]).splitlines()[1].split(",")[0] == "rqcs-1"


def test_parallel_matches_serial():
    p = setup("custom", m=12, n=10, w=2, w_g=2, w_r=2)
    _, serial = bench([p], 4, b"par", jobs=1)
    _, parallel = bench([p], 4, b"par", jobs=2)
    assert [strip_times(r) for r in serial] == [strip_times(r) for r in parallel]
