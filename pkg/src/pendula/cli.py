"""Command-line front end.

Exit codes: 0 success, 2 config/validation error, 3 numerical blowup.
The output directory resolves as --out-dir, then the config file's
out_dir, then $PENDULA_OUT, then ./runs/<experiment>.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .config import EXPERIMENTS, load_config_file, resolve_config
from .errors import ConfigError, IntegrationBlowupError
from .experiments import execute

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_BLOWUP = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pendula",
        description="Deterministic experiments on phase-threshold "
                    "spiking neurons")
    sub = parser.add_subparsers(dest="experiment", required=True)
    for name in EXPERIMENTS:
        p = sub.add_parser(name, help=f"run the {name} experiment")
        p.add_argument("--config", type=str, default=None,
                       help="JSON config file (defaults used when absent)")
        p.add_argument("--out-dir", type=str, default=None)
        p.add_argument("--dt", type=float, default=None,
                       help="override sim.dt_ms")
        p.add_argument("--duration", type=float, default=None,
                       help="override sim.duration_ms")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--integrator", choices=("euler", "rk4"), default=None)
        p.add_argument("--format", choices=("csv", "json"), default="csv",
                       help="spike train file format")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        file_dict = load_config_file(args.config) if args.config else None
        cfg = resolve_config(args.experiment, file_dict, overrides={
            "duration_ms": args.duration,
            "dt_ms": args.dt,
            "integrator": args.integrator,
            "seed": args.seed,
        })
        out_dir = Path(args.out_dir or cfg.out_dir
                       or os.environ.get("PENDULA_OUT")
                       or Path("runs") / cfg.experiment)
        written = execute(cfg, out_dir, spike_format=args.format)
    except ConfigError as err:
        print(f"pendula: config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except IntegrationBlowupError as err:
        print(f"pendula: numerical blowup: {err}", file=sys.stderr)
        return EXIT_BLOWUP
    for path in written:
        print(path)
    return EXIT_OK


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
