"""Parameter-sweep engine: metric surfaces over the rotation and input grids.

Each grid point fixes u_tilde = ry(2*lambda) (by default) on every qubit and
the product input eta(alpha)^n, runs the protocol and records one row per
measurement outcome. Output is deterministic regardless of worker count.
"""
from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import gates
from .gates import UnitaryPair
from .metrics import concurrence, gme_concurrence
from .switch import SwitchSpec, run, superposed_input
from .linalg import density


@dataclass(frozen=True)
class SweepRecord:
    lam: float
    alpha: float
    outcome: str
    probability: float
    metric_value: Optional[float]  # None when the outcome is unreachable
    reachable: bool


@dataclass
class SweepPlan:
    protocol: str  # 'bell' | 'ghz' | 'w'
    n: int
    lambda_grid: list[float]
    alpha_grid: list[float]
    base_u: str = "pauli_z"
    metric: str = "auto"  # 'auto' | 'concurrence' | 'gme_concurrence'

    def __post_init__(self):
        if not self.lambda_grid or not self.alpha_grid:
            raise ValueError("grids must be nonempty")
        for name, grid, lo, hi in (
            ("lambda", self.lambda_grid, 0.0, math.pi / 2),
            ("alpha", self.alpha_grid, 0.0, 1.0),
        ):
            if any(b <= a for a, b in zip(grid, grid[1:])):
                raise ValueError(f"{name} grid must be strictly increasing")
            if grid[0] < lo - 1e-12 or grid[-1] > hi + 1e-12:
                raise ValueError(f"{name} grid must stay within [{lo}, {hi}]")
        if self.metric not in ("auto", "concurrence", "gme_concurrence"):
            raise ValueError(f"unknown metric {self.metric!r}")

    def resolved_metric(self) -> str:
        if self.metric != "auto":
            return self.metric
        return "concurrence" if self.protocol == "bell" else "gme_concurrence"


def default_plan(protocol: str, n: int, lambda_steps: int = 33, alpha_steps: int = 33,
                 metric: str = "auto") -> SweepPlan:
    return SweepPlan(
        protocol=protocol,
        n=n,
        lambda_grid=list(np.linspace(0.0, math.pi / 2, lambda_steps)),
        alpha_grid=list(np.linspace(0.0, 1.0, alpha_steps)),
        metric=metric,
    )


def _evaluate_lambda(plan: SweepPlan, lam: float) -> list[SweepRecord]:
    base_u = gates.parse_gate(plan.base_u)
    pair = UnitaryPair(base_u, gates.ry(2.0 * lam))
    metric = plan.resolved_metric()
    rows = []
    for alpha in plan.alpha_grid:
        spec = SwitchSpec(
            protocol=plan.protocol,
            pairs=[pair] * plan.n,
            inputs=[superposed_input(alpha)] * plan.n,
        )
        for outcome in run(spec):
            if not outcome.reachable:
                value = None
            elif metric == "concurrence":
                value = concurrence(density(outcome.state))
            else:
                value = gme_concurrence(outcome.state).value
            rows.append(
                SweepRecord(
                    lam=lam,
                    alpha=alpha,
                    outcome=outcome.label,
                    probability=outcome.probability,
                    metric_value=value,
                    reachable=outcome.reachable,
                )
            )
    return rows


def worker_count() -> int:
    env = os.environ.get("SWITCH_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def run_sweep(plan: SweepPlan, threads: Optional[int] = None) -> list[SweepRecord]:
    """Evaluate the plan; rows are sorted by lambda, then alpha, then outcome."""
    threads = threads if threads is not None else worker_count()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(lambda lam: _evaluate_lambda(plan, lam), plan.lambda_grid))
    else:
        chunks = [_evaluate_lambda(plan, lam) for lam in plan.lambda_grid]
    rows = [r for chunk in chunks for r in chunk]
    rows.sort(key=lambda r: (r.lam, r.alpha, r.outcome))
    return rows


def _fmt(x: float) -> str:
    return format(x, ".12g")


CSV_COLUMNS = ["lambda", "alpha", "outcome", "probability", "metric", "reachable"]


def _record_row(r: SweepRecord) -> list[str]:
    return [
        _fmt(r.lam),
        _fmt(r.alpha),
        r.outcome,
        _fmt(r.probability),
        "" if r.metric_value is None else _fmt(r.metric_value),
        "true" if r.reachable else "false",
    ]


def export(records: list[SweepRecord], fmt: str, path: str) -> None:
    """Write records as CSV or JSON with 12-significant-digit floats."""
    try:
        if fmt == "csv":
            with open(path, "w", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(CSV_COLUMNS)
                for r in records:
                    writer.writerow(_record_row(r))
        elif fmt == "json":
            docs = [
                {
                    "lambda": float(_fmt(r.lam)),
                    "alpha": float(_fmt(r.alpha)),
                    "outcome": r.outcome,
                    "probability": float(_fmt(r.probability)),
                    "metric": None if r.metric_value is None else float(_fmt(r.metric_value)),
                    "reachable": r.reachable,
                }
                for r in records
            ]
            with open(path, "w") as fh:
                json.dump(docs, fh, indent=2, sort_keys=True)
                fh.write("\n")
        else:
            raise ValueError(f"unknown export format {fmt!r}")
    except OSError as exc:
        raise OSError(f"failed to write sweep output to {path}: {exc}") from exc


def load_csv(path: str) -> list[SweepRecord]:
    records = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            reachable = row["reachable"] == "true"
            records.append(
                SweepRecord(
                    lam=float(row["lambda"]),
                    alpha=float(row["alpha"]),
                    outcome=row["outcome"],
                    probability=float(row["probability"]),
                    metric_value=float(row["metric"]) if row["metric"] else None,
                    reachable=reachable,
                )
            )
    return records
