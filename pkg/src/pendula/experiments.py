"""Experiment execution: runs the configured simulation and writes files.

Every run directory gets a run.json echoing the fully resolved config,
the seed, and format/package versions — enough to re-execute the run
bit-identically. Wall-clock measurements are confined to timings.csv;
every other output file is deterministic for a fixed config and seed.
"""

from __future__ import annotations

import json
import time
from pathlib import Path

from . import __version__
from .config import ExperimentConfig
from .fixedpoint import QFormat, compare_fixed_vs_float
from .models import PendulumParams
from .network import run_network
from .recording import SpikeTrain, fmt_time
from .signals import Constant
from .simulate import SimConfig, isi_cv, isi_list, mean, simulate_single


def execute(cfg: ExperimentConfig, out_dir: Path, spike_format: str = "csv"
            ) -> list[Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    runner = {
        "single": _run_single,
        "layer": _run_layer,
        "stdp": _run_layer,
        "hebbian": _run_layer,
        "compare-models": _run_compare_models,
        "fixedpoint-report": _run_fixedpoint_report,
    }[cfg.experiment]
    written = runner(cfg, out_dir, spike_format)
    written.append(_write_run_json(cfg, out_dir))
    return written


def _write_run_json(cfg: ExperimentConfig, out_dir: Path) -> Path:
    payload = {
        "format_version": 1,
        "package_version": __version__,
        "experiment": cfg.experiment,
        "seed": cfg.seed,
        "config": cfg.resolved,
    }
    path = out_dir / "run.json"
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return path


def _write_spikes(train: SpikeTrain, out_dir: Path, spike_format: str
                  ) -> Path:
    if spike_format == "json":
        path = out_dir / "spikes.json"
        train.write_json(path)
    else:
        path = out_dir / "spikes.csv"
        train.write_csv(path)
    return path


def _run_single(cfg: ExperimentConfig, out_dir: Path,
                spike_format: str) -> list[Path]:
    trace, train = simulate_single(cfg.model, cfg.input_signal, cfg.sim)
    written = [_write_spikes(train, out_dir, spike_format)]
    if cfg.sim.record_trace:
        path = out_dir / "trace.csv"
        trace.write_csv(path)
        written.append(path)
    return written


def _run_layer(cfg: ExperimentConfig, out_dir: Path,
               spike_format: str) -> list[Path]:
    run = run_network(cfg.layer, cfg.sim)
    written = [_write_spikes(run.spike_train, out_dir, spike_format)]
    for step, weights in run.weight_snapshots:
        path = out_dir / f"weights_{step}.csv"
        weights.write_csv(path)
        written.append(path)
    if run.traces is not None:
        for i, trace in enumerate(run.traces):
            path = out_dir / f"trace_{i}.csv"
            trace.write_csv(path)
            written.append(path)
    return written


def _run_compare_models(cfg: ExperimentConfig, out_dir: Path,
                        spike_format: str) -> list[Path]:
    drive = Constant(cfg.compare["input_value"])
    sim = SimConfig(cfg.sim.duration_ms, cfg.sim.dt_ms, "euler",
                    record_trace=False)
    models = [
        ("pendulum", cfg.model if isinstance(cfg.model, PendulumParams)
         else PendulumParams()),
        ("lif", cfg.compare["lif"]),
        ("izhikevich", cfg.compare["izhikevich"]),
    ]
    rows = []
    timing_rows = []
    for name, params in models:
        t0 = time.perf_counter()
        _, train = simulate_single(params, drive, sim)
        elapsed = time.perf_counter() - t0
        times = train.times()
        isis = isi_list(times)
        rows.append({
            "model": name,
            "steps": sim.steps,
            "spikes": len(times),
            "mean_isi_ms": mean(isis) if isis else None,
            "isi_cv": isi_cv(times) if len(isis) >= 2 else None,
        })
        timing_rows.append({
            "model": name,
            "total_s": elapsed,
            "per_step_us": 1e6 * elapsed / sim.steps,
        })

    comparison = out_dir / "comparison.csv"
    lines = ["model,steps,spikes,mean_isi_ms,isi_cv"]
    for r in rows:
        isi = "" if r["mean_isi_ms"] is None else fmt_time(r["mean_isi_ms"])
        cv = "" if r["isi_cv"] is None else format(r["isi_cv"], ".9g")
        lines.append(f"{r['model']},{r['steps']},{r['spikes']},{isi},{cv}")
    comparison.write_text("\n".join(lines) + "\n")

    timings = out_dir / "timings.csv"
    lines = ["model,total_s,per_step_us"]
    for r in timing_rows:
        lines.append(f"{r['model']},{r['total_s']!r},{r['per_step_us']!r}")
    timings.write_text("\n".join(lines) + "\n")

    report = out_dir / "report.json"
    report.write_text(json.dumps(
        {"models": rows, "timings_file": "timings.csv"},
        indent=2, sort_keys=True) + "\n")
    return [comparison, timings, report]


def _run_fixedpoint_report(cfg: ExperimentConfig, out_dir: Path,
                           spike_format: str) -> list[Path]:
    fp = cfg.fixedpoint
    written: list[Path] = []
    summary_rows = []

    def emit(label: str, report, frac_bits) -> None:
        path = out_dir / f"report_{label}.json"
        path.write_text(json.dumps(report.to_json_dict(), indent=2,
                                   sort_keys=True) + "\n")
        written.append(path)
        devs = report.spike_time_devs
        summary_rows.append({
            "label": label,
            "frac_bits": frac_bits,
            "lut_size": report.lut_size,
            "max_theta_err": report.max_theta_err,
            "max_spike_dev_ms": max(devs) if devs else 0.0,
            "count_diff": report.count_diff,
            "saturations": report.saturations,
            "matched_spikes": len(devs),
        })

    for lut_size in fp["lut_sizes"]:
        for frac in fp["frac_bits_list"]:
            q = QFormat(total_bits=fp["total_bits"], frac_bits=frac)
            report = compare_fixed_vs_float(
                cfg.model, cfg.input_signal, cfg.sim, q, lut_size,
                interpolate=fp["interpolate"],
                match_tol_ms=fp["match_tol_ms"])
            emit(f"q{frac}_lut{lut_size}", report, frac)

    if fp["include_float_control"]:
        q = QFormat(total_bits=fp["total_bits"],
                    frac_bits=fp["frac_bits_list"][0])
        report = compare_fixed_vs_float(
            cfg.model, cfg.input_signal, cfg.sim, q, fp["lut_sizes"][0],
            match_tol_ms=fp["match_tol_ms"], float_control=True)
        emit("float_control", report, "")

    summary = out_dir / "summary.csv"
    lines = ["label,frac_bits,lut_size,max_theta_err,max_spike_dev_ms,"
             "count_diff,saturations,matched_spikes"]
    for r in summary_rows:
        lines.append(
            f"{r['label']},{r['frac_bits']},{r['lut_size']},"
            f"{r['max_theta_err']!r},{fmt_time(r['max_spike_dev_ms'])},"
            f"{r['count_diff']},{r['saturations']},{r['matched_spikes']}")
    summary.write_text("\n".join(lines) + "\n")
    written.append(summary)
    return written
