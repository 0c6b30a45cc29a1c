"""crosscheck CLI: validate a pendula run directory against the reference
model and write crosscheck.json (the only file ever written) into it.

Exit codes: 0 checked, 2 not cross-checkable / bad arguments.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import BACKENDS, METHODS, CrosscheckConfig, NotCrosscheckable, \
    load_run_dir
from .diff import diff_spike_trains, load_spike_times
from .reference import build_reference_model, run_reference


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crosscheck",
        description="Diff a pendula run against an independent "
                    "reference-model simulation")
    parser.add_argument("--run-dir", required=True, type=str)
    parser.add_argument("--tol-ms", type=float, default=0.2)
    parser.add_argument("--method", choices=METHODS, default="euler")
    parser.add_argument("--backend", choices=BACKENDS, default="auto")
    parser.add_argument("--dt", type=float, default=None,
                        help="must equal the run's dt when given")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = CrosscheckConfig(run_dir=Path(args.run_dir),
                                  tol_ms=args.tol_ms, method=args.method,
                                  backend=args.backend, dt_ms=args.dt)
        run = load_run_dir(config)
        model = build_reference_model(run)
        reference_times, backend_used = run_reference(
            model, method=config.method, backend=config.backend)
        primary_times = load_spike_times(run.spikes_path)
        report = diff_spike_trains(primary_times, reference_times,
                                   config.tol_ms)
    except NotCrosscheckable as err:
        print(f"crosscheck: {err}", file=sys.stderr)
        return 2
    payload = dict(report)
    payload["meta"] = {
        "backend": backend_used,
        "method": config.method,
        "tol_ms": config.tol_ms,
        "dt_ms": run.dt_ms,
        "primary_spikes": len(primary_times),
        "reference_spikes": len(reference_times),
    }
    out = config.run_dir / "crosscheck.json"
    out.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print(out)
    return 0


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
