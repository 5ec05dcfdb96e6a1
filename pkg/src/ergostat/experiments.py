"""Convergence experiments: trajectories of running order statistics.

One replication draws a stream, feeds the growing sample into an
order-statistic tracker, and records X_{k_n:n} at each checkpoint together
with the stream's realized theoretical limit. Ensembles aggregate
replications; when realized limits vary across replications (non-ergodic
processes) the ensemble also compares the empirical limit/final-value
samples against the theoretical limit law by Kolmogorov-Smirnov distance.

Replications are independent tasks with seeds derived from
(master_seed, replication_index); aggregation sorts by replication id, so
parallel and serial runs emit identical reports.
"""

from __future__ import annotations

import io
import json
import math
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .extended import NEG_INF, POS_INF, format_csv_value, to_json_value
from .order_stats import OrderStatTracker, RankSchedule
from .processes import (
    LimitLaw,
    ProcessSpec,
    ProcessStream,
    limit_law,
    spec_from_json,
    spec_to_json,
)

CSV_HEADER = "rep,n,k_n,value,limit,regime"


def default_checkpoints(n_max: int, start: int = 100) -> tuple[int, ...]:
    """Geometric grid from `start` to n_max in multiplicative 10^(1/4) steps."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if n_max < start:
        return (n_max,)
    pts = []
    exponent = math.log10(start)
    while True:
        n = round(10**exponent)
        if n >= n_max:
            break
        pts.append(int(n))
        exponent += 0.25
    pts.append(n_max)
    out = sorted(set(pts))
    return tuple(out)


@dataclass(frozen=True)
class ExperimentConfig:
    process: ProcessSpec
    schedule: RankSchedule
    n_max: int
    replications: int
    master_seed: int
    checkpoints: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.n_max < 1:
            raise ValueError("n_max must be >= 1")
        if self.replications < 1:
            raise ValueError("replications must be >= 1")
        if self.master_seed < 0:
            raise ValueError("master_seed must be a non-negative integer")
        cps = tuple(self.checkpoints) or default_checkpoints(self.n_max)
        if list(cps) != sorted(set(cps)):
            raise ValueError("checkpoints must be strictly increasing")
        if cps[-1] > self.n_max or cps[0] < 1:
            raise ValueError("checkpoints must lie in [1, n_max]")
        if cps[-1] != self.n_max:
            cps = cps + (self.n_max,)
        object.__setattr__(self, "checkpoints", cps)

    def to_json(self) -> dict:
        return {
            "process": spec_to_json(self.process),
            "schedule": self.schedule.to_json(),
            "n_max": self.n_max,
            "replications": self.replications,
            "master_seed": self.master_seed,
            "checkpoints": list(self.checkpoints),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ExperimentConfig":
        try:
            return cls(
                process=spec_from_json(obj["process"]),
                schedule=RankSchedule.from_json(obj["schedule"]),
                n_max=int(obj["n_max"]),
                replications=int(obj["replications"]),
                master_seed=int(obj["master_seed"]),
                checkpoints=tuple(int(c) for c in obj.get("checkpoints", ())),
            )
        except KeyError as exc:
            raise ValueError(f"experiment config missing field: {exc}") from exc


@dataclass(frozen=True)
class Trajectory:
    replication: int
    points: tuple[tuple[int, int, float], ...]  # (n, k_n, X_{k_n:n})
    limit: float
    hidden: dict

    @property
    def final_value(self) -> float:
        return self.points[-1][2]


def replication_seed(master_seed: int, replication: int) -> int:
    seq = np.random.SeedSequence((int(master_seed), int(replication)))
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def run_trajectory(config: ExperimentConfig, replication: int) -> Trajectory:
    stream = ProcessStream(config.process, replication_seed(config.master_seed, replication))
    tracker = OrderStatTracker()
    points: list[tuple[int, int, float]] = []
    n = 0
    for cp in config.checkpoints:
        tracker.extend(stream.take(cp - n))
        n = cp
        k = config.schedule.rank_at(n)
        points.append((n, k, tracker.select(k)))
    limit = stream.theoretical_limit(config.schedule.lam)
    return Trajectory(replication, tuple(points), limit, dict(stream.hidden))


@dataclass(frozen=True)
class ConvergenceReport:
    config: ExperimentConfig
    trajectories: tuple[Trajectory, ...]
    law: LimitLaw | None

    @property
    def final_values(self) -> list[float]:
        return [t.final_value for t in self.trajectories]

    @property
    def limits(self) -> list[float]:
        return [t.limit for t in self.trajectories]

    def final_errors(self) -> list[float] | None:
        """|final - limit| per replication; None if any limit is infinite."""
        if any(l in (NEG_INF, POS_INF) for l in self.limits):
            return None
        return [abs(t.final_value - t.limit) for t in self.trajectories]

    def limits_vary(self) -> bool:
        ls = self.limits
        return any(l != ls[0] for l in ls[1:])

    def ks_final(self) -> float | None:
        if self.law is None or self.law.is_degenerate():
            return None
        return ks_distance(self.final_values, self.law.cdf)

    def ks_limits(self) -> float | None:
        if self.law is None or self.law.is_degenerate():
            return None
        finite = [l for l in self.limits if l not in (NEG_INF, POS_INF)]
        if len(finite) != len(self.limits):
            return None
        return ks_distance(finite, self.law.cdf)

    def regime_fractions(self) -> dict[int, float] | None:
        regimes = [t.hidden.get("regime") for t in self.trajectories]
        if any(r is None for r in regimes):
            return None
        counts: dict[int, int] = {}
        for r in regimes:
            counts[int(r)] = counts.get(int(r), 0) + 1
        total = len(regimes)
        return {r: c / total for r, c in sorted(counts.items())}

    def summary(self) -> dict:
        errors = self.final_errors()
        out: dict = {
            "replications": len(self.trajectories),
            "lam": self.config.schedule.lam,
            "limits_vary": self.limits_vary(),
            "max_final_error": max(errors) if errors else None,
            "median_final_error": statistics.median(errors) if errors else None,
            "ks_final": self.ks_final(),
            "ks_limits": self.ks_limits(),
            "regime_fractions": self.regime_fractions(),
        }
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(CSV_HEADER + "\n")
        for t in self.trajectories:
            regime = t.hidden.get("regime")
            regime_s = "" if regime is None else str(int(regime))
            limit_s = format_csv_value(t.limit)
            for n, k, value in t.points:
                buf.write(
                    f"{t.replication},{n},{k},{format_csv_value(value)},{limit_s},{regime_s}\n"
                )
        return buf.getvalue()

    def to_ensemble_json(self) -> dict:
        return {
            "schema": "ensemble-v1",
            "config": self.config.to_json(),
            "summary": self.summary(),
            "limits": [to_json_value(l) for l in self.limits],
            "final_values": [to_json_value(v) for v in self.final_values],
            "regimes": [
                (int(t.hidden["regime"]) if "regime" in t.hidden else None)
                for t in self.trajectories
            ],
            "limit_law": self.law.descriptor() if self.law else None,
        }


def run_ensemble(config: ExperimentConfig, threads: int = 1) -> ConvergenceReport:
    reps = range(config.replications)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            trajectories = list(pool.map(lambda r: run_trajectory(config, r), reps))
    else:
        trajectories = [run_trajectory(config, r) for r in reps]
    trajectories.sort(key=lambda t: t.replication)
    law = limit_law(config.process, config.schedule.lam)
    return ConvergenceReport(config, tuple(trajectories), law)


def ks_distance(samples: Sequence[float], cdf: Callable) -> float:
    """sup_x |Fhat(x) - cdf(x)| for the empirical cdf of the samples.

    Evaluated at every jump point from both sides: at each distinct sample
    value v the gap is measured at v (post-jump empirical mass against
    cdf(v)) and just below v (pre-jump mass against cdf evaluated just
    below v), which handles reference laws with atoms.
    """
    xs = np.sort(np.asarray(list(samples), dtype=float))
    n = xs.size
    if n == 0:
        raise ValueError("empty sample")
    values, counts = np.unique(xs, return_counts=True)
    hi = np.cumsum(counts) / n
    lo = np.concatenate([[0.0], hi[:-1]])
    at = np.asarray(cdf(values), dtype=float)
    just_below = np.asarray(cdf(np.nextafter(values, -np.inf)), dtype=float)
    gap = np.maximum(np.abs(hi - at), np.abs(lo - just_below))
    return float(gap.max())


# --- assertion evaluation (drives the CLI exit code) -------------------------


@dataclass(frozen=True)
class AssertionOutcome:
    name: str
    passed: bool
    detail: str


def evaluate_assertions(report: ConvergenceReport, spec: dict) -> list[AssertionOutcome]:
    """Checks requested by a config's "assertions" object.

    Supported keys:
      max_final_error: every |final - limit| at most this (finite limits)
      final_at_most / final_at_least: every final value crosses a threshold
        (the infinite-limit form of convergence checking)
      ks_final_max: KS distance of final values to the limit law at most this
      near_values: {"values": [...], "tol": t, "fraction_near_first": [lo, hi]}
        every final value within t of some listed value; optionally the
        fraction nearest to the first value lies in [lo, hi]
    """
    out: list[AssertionOutcome] = []
    if "max_final_error" in spec:
        bound = float(spec["max_final_error"])
        errors = report.final_errors()
        if errors is None:
            out.append(AssertionOutcome("max_final_error", False, "a limit is infinite"))
        else:
            worst = max(errors)
            out.append(
                AssertionOutcome("max_final_error", worst <= bound, f"max error {worst!r}")
            )
    if "final_at_most" in spec:
        bound = float(spec["final_at_most"])
        worst = max(report.final_values)
        out.append(AssertionOutcome("final_at_most", worst <= bound, f"max final {worst!r}"))
    if "final_at_least" in spec:
        bound = float(spec["final_at_least"])
        worst = min(report.final_values)
        out.append(AssertionOutcome("final_at_least", worst >= bound, f"min final {worst!r}"))
    if "ks_final_max" in spec:
        bound = float(spec["ks_final_max"])
        d = report.ks_final()
        if d is None:
            out.append(AssertionOutcome("ks_final_max", False, "no non-degenerate limit law"))
        else:
            out.append(AssertionOutcome("ks_final_max", d <= bound, f"ks {d!r}"))
    if "near_values" in spec:
        block = spec["near_values"]
        targets = [float(v) for v in block["values"]]
        tol = float(block["tol"])
        finals = report.final_values
        dists = [[abs(v - t) for t in targets] for v in finals]
        all_near = all(min(row) <= tol for row in dists)
        detail = f"max distance to target set {max(min(row) for row in dists)!r}"
        passed = all_near
        if "fraction_near_first" in block and all_near:
            lo, hi = (float(b) for b in block["fraction_near_first"])
            frac = sum(
                1 for row in dists if row[0] == min(row) and row[0] <= tol
            ) / len(finals)
            passed = lo <= frac <= hi
            detail += f"; fraction near first {frac!r}"
        out.append(AssertionOutcome("near_values", passed, detail))
    return out
