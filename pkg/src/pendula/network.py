"""Recurrent layer of pendulum neurons with trace-based coupling.

Every step: (1) each neuron's drive is its external input at the step's
sample time plus gain * sum_j w[i][j] * s_j using the traces from the
previous step, (2) all neurons advance synchronously from the previous
snapshot, (3) spikes are collected, (4) traces decay by exp(-dt/syn_tau)
and each spiker's trace gains +1 (affecting the next step, not its own),
(5) plasticity runs in ascending neuron index (STDP post- then pre-role
per spiker, then Hebbian). The coupling sums use math.fsum, so permuting
neuron indices permutes results exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ConfigError, IntegrationBlowupError
from .models import NeuronState, PendulumParams, step_pendulum_euler
from .plasticity import (HebbianParams, SpikeHistory, StdpParams, WeightMatrix,
                         hebbian_step, on_post_spike, on_pre_spike)
from .recording import SpikeTrain, TraceRecord, TraceRow
from .signals import InputSignal, Sampled
from .simulate import SimConfig, TimeGrid


@dataclass
class LayerConfig:
    n: int
    params: PendulumParams | list[PendulumParams]
    inputs: list[InputSignal]
    syn_tau: float = 5.0
    syn_gain: float = 1.0
    weights: WeightMatrix | None = None
    stdp: StdpParams | None = None
    hebbian: HebbianParams | None = None
    record_trace: bool = False
    snapshot_every_steps: int = 0
    delay_ms: float = 0.0          # reserved; only 0 is supported

    def __post_init__(self):
        if self.n < 1:
            raise ConfigError("layer needs n >= 1")
        if not (self.syn_tau > 0.0):
            raise ConfigError("syn_tau must be > 0")
        if len(self.inputs) != self.n:
            raise ConfigError("inputs list must have length n")
        if isinstance(self.params, list) and len(self.params) != self.n:
            raise ConfigError("per-neuron params list must have length n")
        if self.weights is not None and self.weights.n != self.n:
            raise ConfigError("weight matrix size must match n")
        if self.delay_ms != 0.0:
            raise ConfigError("synaptic delays are reserved and must be 0")
        if self.snapshot_every_steps < 0:
            raise ConfigError("snapshot_every_steps must be >= 0")

    def param_list(self) -> list[PendulumParams]:
        if isinstance(self.params, list):
            return list(self.params)
        return [self.params] * self.n


@dataclass
class SynapticTraces:
    """Per-neuron exponentially decaying spike trace, +1 per spike."""

    values: list[float]

    @classmethod
    def zeros(cls, n: int) -> "SynapticTraces":
        return cls([0.0] * n)

    def decay(self, factor: float) -> None:
        self.values = [s * factor for s in self.values]

    def bump(self, neuron: int) -> None:
        self.values[neuron] += 1.0


@dataclass
class NetworkRun:
    n: int
    spike_logs: list[list[float]]
    spike_train: SpikeTrain
    traces: list[TraceRecord] | None
    weight_snapshots: list[tuple[int, WeightMatrix]]
    final_weights: WeightMatrix
    final_step: int


def synaptic_current(traces: SynapticTraces, w: WeightMatrix, i: int,
                     gain: float) -> float:
    """gain * sum_{j != i} w[i][j] * s_j, exactly rounded via fsum."""
    row = w.w[i]
    s = traces.values
    return gain * math.fsum(row[j] * s[j] for j in range(w.n) if j != i)


def network_step(states: list[NeuronState], traces: SynapticTraces,
                 w: WeightMatrix, history: SpikeHistory,
                 params: list[PendulumParams], inputs: list[InputSignal],
                 t_sample: float, t_report: float, dt: float,
                 syn_gain: float, decay_factor: float,
                 stdp: StdpParams | None, hebbian: HebbianParams | None
                 ) -> tuple[list[NeuronState], list[int], list[float]]:
    """Advance the whole layer one step; returns (states, spikers, currents)."""
    n = len(states)
    currents = [inputs[i].evaluate(t_sample)
                + synaptic_current(traces, w, i, syn_gain)
                for i in range(n)]

    new_states: list[NeuronState] = []
    spikers: list[int] = []
    for i in range(n):
        try:
            state, spiked = step_pendulum_euler(states[i], params[i],
                                                currents[i], dt)
        except IntegrationBlowupError as err:
            raise IntegrationBlowupError(err.args[0], neuron=i) from None
        new_states.append(state)
        if spiked:
            spikers.append(i)

    traces.decay(decay_factor)
    for i in spikers:
        traces.bump(i)
        history.record(i, t_report)

    if stdp is not None:
        for i in spikers:
            on_post_spike(i, t_report, history, w, stdp)
            on_pre_spike(i, t_report, history, w, stdp)
    if hebbian is not None:
        spiked_now = [False] * n
        for i in spikers:
            spiked_now[i] = True
        hebbian_step(spiked_now, history, t_report, w, hebbian)

    return new_states, spikers, currents


def run_network(config: LayerConfig, sim: SimConfig) -> NetworkRun:
    """Run the layer for int(duration/dt) grid steps (same grid as
    simulate_single, so a 1-neuron layer reproduces it exactly)."""
    if sim.integrator != "euler":
        raise ConfigError("network runs use the euler integrator")
    for sig in config.inputs:
        if isinstance(sig, Sampled) and not sig.covers(sim.duration_ms):
            raise ConfigError("sampled input does not cover the run duration")

    n = config.n
    params = config.param_list()
    w = (config.weights or WeightMatrix.zeros(n)).copy()
    grid = TimeGrid(sim)
    traces = SynapticTraces.zeros(n)
    history = SpikeHistory(n)
    decay_factor = math.exp(-sim.dt_ms / config.syn_tau)

    states = [NeuronState(0.0, 0.0)] * n
    logs: list[list[float]] = [[] for _ in range(n)]
    train = SpikeTrain()
    trace_records = ([TraceRecord() for _ in range(n)]
                     if config.record_trace else None)
    snapshots: list[tuple[int, WeightMatrix]] = []

    if trace_records is not None:
        for i in range(n):
            trace_records[i].append(TraceRow(
                0.0, 0.0, 0.0, config.inputs[i].evaluate(0.0), False))

    last_step = grid.steps - 1
    for step in range(1, grid.steps):
        t_sample = grid.sample_time(step)
        t_report = grid.reported_time(step)
        try:
            states, spikers, currents = network_step(
                states, traces, w, history, params, config.inputs,
                t_sample, t_report, sim.dt_ms, config.syn_gain, decay_factor,
                config.stdp, config.hebbian)
        except IntegrationBlowupError as err:
            raise err.at(step, t_report, err.neuron) from None
        for i in spikers:
            logs[i].append(t_report)
            train.append(i, t_report)
        if trace_records is not None:
            spiked_set = set(spikers)
            for i in range(n):
                trace_records[i].append(TraceRow(
                    t_report, states[i].theta, states[i].dtheta,
                    currents[i], i in spiked_set))
        if (config.snapshot_every_steps
                and step % config.snapshot_every_steps == 0
                and step != last_step):
            snapshots.append((step, w.copy()))

    snapshots.append((last_step, w.copy()))
    return NetworkRun(n=n, spike_logs=logs, spike_train=train,
                      traces=trace_records, weight_snapshots=snapshots,
                      final_weights=w, final_step=last_step)
