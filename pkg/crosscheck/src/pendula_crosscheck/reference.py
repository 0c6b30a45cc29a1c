"""The reference model: the neuron as a coupled first-order pair

    dtheta/dt = omega
    domega/dt = -gamma * omega - omega0^2 * sin(theta) + I(t)

with a strict threshold (theta > threshold) and hard reset, integrated
with a fixed-step Euler method. Two orderings are available:

- "euler" (default): omega is updated first and the theta update uses the
  updated omega, with the input sampled at the end-of-step grid point.
  This is the ordering the engine's published run contract uses, so
  deviations against a healthy engine come only from the strict-vs-
  inclusive threshold (one grid step at most).
- "explicit-euler": textbook synchronous update from the old state with
  the input sampled at the step start — what Brian2's 'euler' state
  updater computes. This ordering drifts against the engine by design
  (the two schemes' inter-spike intervals differ at O(dt)); its observed
  skew on the default run is frozen in the tests as a regression bound.

A brian2 backend builds the same model as a NeuronGroup when the package
is importable; the builtin backend has no dependencies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .config import NotCrosscheckable, RunInfo, build_input_fn


@dataclass
class ReferenceModel:
    gamma: float
    omega0: float
    threshold: float
    reset_theta: float
    reset_dtheta: float
    duration_ms: float
    dt_ms: float
    input_fn: Callable[[float], float]
    input_spec: dict


def build_reference_model(run: RunInfo) -> ReferenceModel:
    model = run.model
    return ReferenceModel(
        gamma=float(model.get("gamma", 0.05)),
        omega0=float(model.get("omega0", 1.0)),
        threshold=float(model.get("threshold_theta", math.pi)),
        reset_theta=float(model.get("reset_theta", 0.0)),
        reset_dtheta=float(model.get("reset_dtheta", 0.0)),
        duration_ms=run.duration_ms,
        dt_ms=run.dt_ms,
        input_fn=build_input_fn(run.input_spec, run.duration_ms, run.dt_ms),
        input_spec=run.input_spec,
    )


def run_reference(model: ReferenceModel, method: str = "euler",
                  backend: str = "auto") -> tuple[list[float], str]:
    """Run the reference; returns (spike times in ms, backend used).

    Backend "auto" resolves to builtin for the velocity-first "euler"
    method; for "explicit-euler" it prefers brian2 when installed (whose
    'euler' state updater computes exactly that synchronous form).
    """
    if backend == "brian2":
        if not _brian2_available():
            raise NotCrosscheckable("brian2 backend requested but brian2 "
                                    "is not installed")
        if method != "explicit-euler":
            raise NotCrosscheckable(
                "the brian2 backend integrates with the synchronous "
                "explicit ordering; use --method explicit-euler with it")
        return _run_brian2(model), "brian2"
    if backend == "auto" and method == "explicit-euler" and _brian2_available():
        return _run_brian2(model), "brian2"
    return _run_builtin(model, method), "builtin"


def _run_builtin(model: ReferenceModel, method: str) -> list[float]:
    dt = model.dt_ms
    steps = int(model.duration_ms / dt)
    sample_step = model.duration_ms / (steps - 1) if steps > 1 else dt
    gamma, w0sq = model.gamma, model.omega0 ** 2
    theta = 0.0
    omega = 0.0
    spikes: list[float] = []
    sin = math.sin
    for i in range(1, steps):
        if method == "euler":
            t = model.duration_ms if i == steps - 1 else i * sample_step
            drive = model.input_fn(t)
            omega = omega + (-gamma * omega - w0sq * sin(theta) + drive) * dt
            theta = theta + omega * dt
        else:
            t = (i - 1) * sample_step
            drive = model.input_fn(t)
            theta_new = theta + omega * dt
            omega = omega + (-gamma * omega - w0sq * sin(theta) + drive) * dt
            theta = theta_new
        if theta > model.threshold:
            spikes.append(i * dt)
            theta = model.reset_theta
            omega = model.reset_dtheta
    return spikes


def _brian2_available() -> bool:
    try:
        import brian2  # noqa: F401
    except ImportError:
        return False
    return True


def _run_brian2(model: ReferenceModel) -> list[float]:
    from brian2 import (NeuronGroup, SpikeMonitor, TimedArray, ms, run,
                        defaultclock)

    dt = model.dt_ms
    steps = int(model.duration_ms / dt)
    drive = TimedArray(
        [model.input_fn(i * dt) for i in range(steps + 2)] * 1.0, dt=dt * ms)
    eqs = """
    dtheta/dt = omega_v / ms : 1
    domega_v/dt = (-gamma_c * omega_v - w0sq_c * sin(theta)
                   + drive(t)) / ms : 1
    """
    defaultclock.dt = dt * ms
    group = NeuronGroup(
        1, eqs, threshold="theta > thr_c",
        reset="theta = reset_th_c; omega_v = reset_om_c",
        method="euler",
        namespace={"gamma_c": model.gamma, "w0sq_c": model.omega0 ** 2,
                   "thr_c": model.threshold,
                   "reset_th_c": model.reset_theta,
                   "reset_om_c": model.reset_dtheta,
                   "drive": drive})
    monitor = SpikeMonitor(group)
    run(model.duration_ms * ms)
    return [float(t / ms) for t in monitor.t]
