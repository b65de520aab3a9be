"""Reproduce the timing table: repeated end-to-end key recovery per instance.

Trial seeds come from a counter scheme so any single trial can be re-run:
trial_seed = derive_seed(master, instance, trial_index), then the target
key uses derive_seed(trial_seed, "keygen"), the signing oracle
derive_seed(trial_seed, "oracle") and the forgery check
derive_seed(trial_seed, "forge").
"""

from __future__ import annotations

import csv
import io
import json
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from .attack import AttackFailedError, forge, recover_key, signing_oracle
from .params import INSTANCES, Params, setup
from .scheme import keygen, verify
from .xof import Xof, derive_seed


@dataclass
class TrialResult:
    instance: str
    trial: int
    success: bool
    retries: int
    signatures_consumed: int
    step1_seconds: float
    step2_seconds: float
    total_seconds: float
    exact: bool
    forgery_verified: bool


@dataclass
class BenchRow:
    instance: str
    params: tuple[int, int, int, int]
    claimed_security: int | None
    trials: int
    success_rate: float
    mean_attack_seconds: float
    median_attack_seconds: float
    mean_retries: float


def run_trial(params: Params, master_seed: bytes, trial: int, max_retries: int = 10) -> TrialResult:
    seed = derive_seed(master_seed, params.name, trial)
    pk, sk = keygen(params, Xof(derive_seed(seed, "keygen")))
    oracle = signing_oracle(sk, pk, params, Xof(derive_seed(seed, "oracle")))
    try:
        rep = recover_key(pk, oracle, params, max_retries=max_retries, target_sk=sk)
    except AttackFailedError as exc:
        rep = exc.report
    forged = False
    if rep.success:
        frng = Xof(derive_seed(seed, "forge"))
        msg = frng.randbytes(32)
        forged = bool(verify(pk, msg, forge(rep.recovered_sk, pk, msg, params, frng), params))
    return TrialResult(
        params.name, trial, rep.success, rep.retries, rep.signatures_consumed,
        rep.step1_seconds, rep.step2_seconds, rep.total_seconds,
        rep.equivalent_or_exact == "exact", forged,
    )


def summarize(params: Params, results: list[TrialResult]) -> BenchRow:
    if not results:
        raise ValueError("no trials to summarize")
    times = [r.total_seconds for r in results]
    return BenchRow(
        instance=params.name,
        params=params.tuple4,
        claimed_security=params.security,
        trials=len(results),
        success_rate=sum(r.success and r.forgery_verified for r in results) / len(results),
        mean_attack_seconds=statistics.fmean(times),
        median_attack_seconds=statistics.median(times),
        mean_retries=statistics.fmean(r.retries for r in results),
    )


def _trial_job(args):
    return run_trial(*args)


def bench(instances: list[Params], trials: int, master_seed: bytes, jobs: int = 1,
          max_retries: int = 10) -> tuple[list[BenchRow], list[TrialResult]]:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rows, all_results = [], []
    for params in instances:
        work = [(params, master_seed, t, max_retries) for t in range(trials)]
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_trial_job, work))
        else:
            results = [_trial_job(w) for w in work]
        results.sort(key=lambda r: r.trial)
        rows.append(summarize(params, results))
        all_results.extend(results)
    return rows, all_results


def resolve_instances(spec: str) -> list[Params]:
    names = list(INSTANCES) if spec == "all" else [s.strip() for s in spec.split(",") if s.strip()]
    return [setup(name) for name in names]


CSV_COLUMNS = [
    "instance", "params", "claimed_security", "mean_kra_seconds",
    "median_kra_seconds", "success_rate", "mean_retries", "trials",
]


def rows_to_csv(rows: list[BenchRow]) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(CSV_COLUMNS)
    for r in rows:
        out.writerow([
            r.instance, "(" + ",".join(map(str, r.params)) + ")", r.claimed_security,
            f"{r.mean_attack_seconds:.4f}", f"{r.median_attack_seconds:.4f}",
            f"{r.success_rate:.4f}", f"{r.mean_retries:.4f}", r.trials,
        ])
    return buf.getvalue()


def rows_to_json(rows: list[BenchRow], results: list[TrialResult] | None = None) -> str:
    doc = {"rows": [asdict(r) for r in rows]}
    if results is not None:
        doc["trials"] = [asdict(r) for r in results]
    return json.dumps(doc, indent=2) + "\n"
