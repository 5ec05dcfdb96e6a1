"""Command-line driver: `verify-finite`, `simulate`, and `diagnose`.

Experiments are defined by JSON configs (reproducible and diffable); flags
only carry paths, the worker cap, and a seed override. Every run writes its
outputs plus a manifest listing them, with a config hash that is stable
under key reordering.

Exit codes: 0 pass, 1 assertion failure (with a counterexample or failing
report serialized), 2 usage/config error.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, diagnostics, verify
from .diagnostics import default_thresholds, summability_diagnostic
from .experiments import ExperimentConfig, evaluate_assertions, run_ensemble
from .processes import ProcessStream, SpecError, spec_from_json

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def config_hash(obj: dict) -> str:
    canon = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(canon).hexdigest()


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def write_manifest(
    out_dir: Path, cfg: dict, master_seed: int | None, outputs: list[Path], elapsed: float
) -> Path:
    import scipy

    manifest = {
        "config_hash": config_hash(cfg),
        "master_seed": master_seed,
        "versions": {
            "ergostat": __version__,
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "python": sys.version.split()[0],
        },
        "wall_clock_s": elapsed,
        "outputs": [p.name for p in outputs],
    }
    path = out_dir / "manifest.json"
    _atomic_write(path, json.dumps(manifest, indent=2) + "\n")
    return path


def _load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise UsageError("config must be a JSON object")
    return cfg


class UsageError(Exception):
    pass


def cmd_verify_finite(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    spaces = int(cfg.get("spaces", 1000))
    max_outcomes = int(cfg.get("max_outcomes", 12))
    seed = int(args.seed if args.seed is not None else cfg.get("seed", 0))
    if spaces <= 0:
        print("error: empty suite (spaces must be >= 1)", file=sys.stderr)
        return EXIT_USAGE
    if not 1 <= max_outcomes <= 12:
        print("error: max_outcomes must be in [1, 12]", file=sys.stderr)
        return EXIT_USAGE
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    t0 = time.monotonic()
    result = verify.run_finite_suite(spaces, max_outcomes, seed, stop_on_first=True)
    elapsed = time.monotonic() - t0
    outputs: list[Path] = []
    if result.ok:
        print(f"verify-finite: {result.checked} spaces checked, 0 violations")
        write_manifest(out_dir, cfg, seed, outputs, elapsed)
        return EXIT_OK
    first = verify.shrink_instance(result.violations[0])
    ce_path = out_dir / "counterexample.json"
    _atomic_write(
        ce_path,
        json.dumps(
            {"property": first.prop, "detail": first.detail, "instance": first.instance},
            indent=2,
        )
        + "\n",
    )
    outputs.append(ce_path)
    write_manifest(out_dir, cfg, seed, outputs, elapsed)
    print(
        f"verify-finite: violation of '{first.prop}' ({first.detail}); "
        f"minimal instance written to {ce_path}",
        file=sys.stderr,
    )
    return EXIT_FAIL


def cmd_simulate(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    if args.seed is not None:
        cfg = {**cfg, "master_seed": int(args.seed)}
    try:
        config = ExperimentConfig.from_json(cfg)
    except (ValueError, SpecError) as exc:
        print(f"error: invalid experiment config: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    t0 = time.monotonic()
    report = run_ensemble(config, threads=args.threads)
    outcomes = evaluate_assertions(report, cfg.get("assertions", {}))
    elapsed = time.monotonic() - t0

    csv_path = out_dir / "trajectories.csv"
    _atomic_write(csv_path, report.to_csv())
    ensemble = report.to_ensemble_json()
    ensemble["assertions"] = [dataclasses.asdict(o) for o in outcomes]
    json_path = out_dir / "ensemble.json"
    _atomic_write(json_path, json.dumps(ensemble, indent=2) + "\n")
    write_manifest(out_dir, cfg, config.master_seed, [csv_path, json_path], elapsed)

    for o in outcomes:
        status = "pass" if o.passed else "FAIL"
        print(f"simulate: [{status}] {o.name}: {o.detail}")
    summary = report.summary()
    print(
        f"simulate: {summary['replications']} replications, "
        f"limits_vary={summary['limits_vary']}, outputs in {out_dir}"
    )
    return EXIT_OK if all(o.passed for o in outcomes) else EXIT_FAIL


def cmd_diagnose(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    try:
        spec = spec_from_json(cfg["process"])
        n = int(cfg["n"])
        max_lag = int(cfg["max_lag"])
    except (KeyError, SpecError, ValueError, TypeError) as exc:
        print(f"error: invalid diagnose config: {exc}", file=sys.stderr)
        return EXIT_USAGE
    replications = int(cfg.get("replications", 10))
    seed = int(args.seed if args.seed is not None else cfg.get("seed", 0))
    if n < 1 or replications < 1:
        print("error: n and replications must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    if not max_lag < n / 10:
        print(f"error: max_lag must be < n/10 = {n / 10}", file=sys.stderr)
        return EXIT_USAGE

    # A single path of a non-ergodic process carries no ensemble variation,
    # so the sample concatenates independent replications.
    block = n // replications
    if block <= max_lag:
        print("error: n/replications must exceed max_lag", file=sys.stderr)
        return EXIT_USAGE
    pieces = []
    for r in range(replications):
        stream = ProcessStream(spec, seed=int(np.random.SeedSequence((seed, r)).generate_state(1, dtype=np.uint64)[0]))
        pieces.append(stream.take(block))
    xs = np.concatenate(pieces)

    thresholds = cfg.get("x_grid") or default_thresholds(xs, cfg.get("x_quantiles", (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)))
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    t0 = time.monotonic()
    reports = [summability_diagnostic(xs, float(x), max_lag) for x in thresholds]
    elapsed = time.monotonic() - t0

    json_path = out_dir / "diagnostics.json"
    _atomic_write(
        json_path,
        json.dumps(
            {
                "note": diagnostics.DIAGNOSTIC_NOTE,
                "flag_level": diagnostics.FLATNESS_FLAG_LEVEL,
                "sample_length": int(xs.size),
                "replications": replications,
                "reports": [r.to_json() for r in reports],
            },
            indent=2,
        )
        + "\n",
    )
    csv_lines = ["x,i,c_hat,S_m"]
    for r in reports:
        for i, c, s in zip(r.lags, r.c_hat, r.partial_sums):
            csv_lines.append(f"{r.x!r},{i},{c!r},{s!r}")
    csv_path = out_dir / "diagnostics.csv"
    _atomic_write(csv_path, "\n".join(csv_lines) + "\n")
    write_manifest(out_dir, cfg, seed, [csv_path, json_path], elapsed)

    for r in reports:
        marker = "FLAGGED" if r.flagged else "flat"
        print(f"diagnose: x={r.x:.6g} tail_flatness={r.tail_flatness:.4f} [{marker}]")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ergostat",
        description=(
            "Exact finite-space endpoint verification and Monte Carlo "
            "convergence experiments for order statistics of stationary processes"
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", required=True, help="JSON config path")
        p.add_argument("--out", default="out", help="output directory")
        p.add_argument("--threads", type=int, default=1, help="worker cap")
        p.add_argument("--seed", type=int, default=None, help="override config seed")

    p_vf = sub.add_parser("verify-finite", help="run the randomized finite-space suite")
    common(p_vf)
    p_vf.set_defaults(func=cmd_verify_finite)

    p_sim = sub.add_parser("simulate", help="run a convergence experiment ensemble")
    common(p_sim)
    p_sim.set_defaults(func=cmd_simulate)

    p_diag = sub.add_parser("diagnose", help="autocovariance summability diagnostic")
    common(p_diag)
    p_diag.set_defaults(func=cmd_diagnose)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses exit code 2 for usage errors already
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
