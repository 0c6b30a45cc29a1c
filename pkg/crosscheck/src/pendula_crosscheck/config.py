"""Run-directory loading and cross-checkability rules.

The harness is read-only over the primary's outputs; the only file it
ever writes is crosscheck.json. A run is cross-checkable when it is a
single-neuron pendulum run in floating point — layer/plasticity runs and
the fixed-point report grid are out of scope for the reference model.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

METHODS = ("euler", "explicit-euler")
BACKENDS = ("auto", "builtin", "brian2")


class NotCrosscheckable(ValueError):
    """The run directory cannot be validated against the reference model."""


@dataclass(frozen=True)
class CrosscheckConfig:
    run_dir: Path
    tol_ms: float = 0.2
    method: str = "euler"
    backend: str = "auto"
    dt_ms: float | None = None      # must equal the primary run's dt

    def __post_init__(self):
        if self.tol_ms <= 0:
            raise NotCrosscheckable("tol_ms must be > 0")
        if self.method not in METHODS:
            raise NotCrosscheckable(f"unknown method {self.method!r}")
        if self.backend not in BACKENDS:
            raise NotCrosscheckable(f"unknown backend {self.backend!r}")


@dataclass
class RunInfo:
    """The parts of a primary run.json the reference model needs."""

    experiment: str
    model: dict
    input_spec: dict
    duration_ms: float
    dt_ms: float
    spikes_path: Path
    raw: dict = field(repr=False, default_factory=dict)


def load_run_dir(config: CrosscheckConfig) -> RunInfo:
    run_json = config.run_dir / "run.json"
    if not run_json.exists():
        raise NotCrosscheckable(f"no run.json in {config.run_dir}")
    raw = json.loads(run_json.read_text())
    cfg = raw.get("config", {})
    experiment = raw.get("experiment")
    if experiment != "single":
        raise NotCrosscheckable(
            f"experiment {experiment!r} is not cross-checkable: the "
            f"reference model covers single-neuron dynamics only")
    model = cfg.get("model", {})
    if model.get("kind") != "pendulum":
        raise NotCrosscheckable(
            f"model {model.get('kind')!r} is not cross-checkable")
    if "fixedpoint" in cfg:
        raise NotCrosscheckable("fixed-point runs are not cross-checkable: "
                                "the reference model is float-only")
    sim = cfg.get("sim", {})
    dt = float(sim.get("dt_ms", 0.1))
    if config.dt_ms is not None and config.dt_ms != dt:
        raise NotCrosscheckable(
            f"dt override {config.dt_ms} does not match the run's dt {dt}")
    duration = float(sim.get("duration_ms", 500.0))
    if not (dt > 0 and duration >= dt):
        raise NotCrosscheckable("run has an invalid time grid")
    spikes = config.run_dir / "spikes.csv"
    if not spikes.exists():
        raise NotCrosscheckable(f"no spikes.csv in {config.run_dir}")
    input_spec = cfg.get("input")
    if not isinstance(input_spec, dict):
        raise NotCrosscheckable("run config carries no input spec")
    return RunInfo(experiment=experiment, model=model, input_spec=input_spec,
                   duration_ms=duration, dt_ms=dt, spikes_path=spikes,
                   raw=raw)


def build_input_fn(spec: dict, duration_ms: float, dt_ms: float):
    """Reconstruct I(t) from the echoed input spec.

    Kinds: constant, sinusoid, sampled (nearest sample, half rounds up),
    zero, and pulse (the config-level convenience; evaluated directly).
    """
    kind = spec.get("kind")
    if kind == "constant":
        value = float(spec["value"])
        return lambda t: value
    if kind == "sinusoid":
        amp = float(spec["amplitude"])
        freq = float(spec["angular_freq"])
        bias = float(spec.get("bias", 0.0))
        return lambda t: amp * math.sin(freq * t) + bias
    if kind == "zero":
        return lambda t: 0.0
    if kind == "sampled":
        sample_dt = float(spec["sample_dt"])
        values = [float(v) for v in spec["values"]]
        if (len(values) - 1) * sample_dt < duration_ms:
            raise NotCrosscheckable("sampled input does not cover the run")

        def sampled(t):
            idx = math.floor(t / sample_dt + 0.5)
            return values[min(max(idx, 0), len(values) - 1)]
        return sampled
    if kind == "pulse":
        amp = float(spec["amplitude"])
        width = float(spec["width_ms"])
        period = float(spec["period_ms"])
        delay = float(spec.get("delay_ms", 0.0))
        # mirror the primary's lowering: sampled on the dt grid
        steps = int(duration_ms / dt_ms)
        values = []
        for i in range(steps + 2):
            t = i * dt_ms - delay
            values.append(amp if t >= 0 and math.fmod(t, period) < width
                          else 0.0)
        return build_input_fn({"kind": "sampled", "sample_dt": dt_ms,
                               "values": values}, duration_ms, dt_ms)
    raise NotCrosscheckable(f"input kind {kind!r} is not cross-checkable")
