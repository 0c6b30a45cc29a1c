"""Single-neuron simulation loop shared by all models.

Time conventions
----------------
A run of duration T at step dt has ``steps = int(T / dt)`` grid rows,
row 0 holding the initial state. Input currents are sampled on the
inclusive grid of ``steps`` points spanning [0, T] (endpoint included),
so the sample spacing is T/(steps-1) — one part in ``steps`` wider than
dt. Reported trace and spike times are exact multiples i*dt. Keeping
both conventions fixed is what makes recorded runs reproducible
byte-for-byte, so neither may be changed casually.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigError, IntegrationBlowupError
from .models import (IzhikevichParams, LifParams, ModelParams, NeuronState,
                     PendulumParams, WheelParams, step_izhikevich, step_lif,
                     step_pendulum_euler, step_pendulum_rk4, step_wheel)
from .recording import SpikeTrain, TraceRecord, TraceRow
from .signals import InputSignal, Sampled


@dataclass(frozen=True)
class SimConfig:
    duration_ms: float = 500.0
    dt_ms: float = 0.1
    integrator: str = "euler"          # "euler" | "rk4"
    record_trace: bool = True

    def __post_init__(self):
        if not (self.dt_ms > 0.0):
            raise ConfigError("dt_ms must be > 0")
        if not (self.duration_ms >= self.dt_ms):
            raise ConfigError("duration_ms must be >= dt_ms")
        if self.integrator not in ("euler", "rk4"):
            raise ConfigError(f"unknown integrator {self.integrator!r}")

    @property
    def steps(self) -> int:
        return int(self.duration_ms / self.dt_ms)


class TimeGrid:
    """Maps step indices to input-sample times and reported times."""

    def __init__(self, config: SimConfig):
        self.steps = config.steps
        self.dt = config.dt_ms
        self.duration = config.duration_ms
        self._sample_step = (self.duration / (self.steps - 1)
                             if self.steps > 1 else self.dt)

    def sample_time(self, i: int) -> float:
        """Input-sample time for step i (endpoint forced to the duration)."""
        if i == self.steps - 1:
            return self.duration
        return i * self._sample_step

    def reported_time(self, i: int) -> float:
        return i * self.dt


def simulate_single(params: ModelParams, signal: InputSignal,
                    config: SimConfig,
                    initial_state: NeuronState | None = None
                    ) -> tuple[TraceRecord, SpikeTrain]:
    """Run one neuron for int(duration/dt) grid steps.

    Returns the trace (empty if record_trace is off) and the spike train
    with times i*dt at the steps whose threshold check fired. The trace
    holds whatever pair of state variables the model carries; second-order
    models fill both columns, first-order models leave the second at 0.
    """
    if config.integrator == "rk4" and not isinstance(params, PendulumParams):
        raise ConfigError("rk4 integrator is only available for the pendulum model")
    if isinstance(signal, Sampled) and not signal.covers(config.duration_ms):
        raise ConfigError("sampled input does not cover the run duration")

    grid = TimeGrid(config)
    trace = TraceRecord()
    train = SpikeTrain()

    if isinstance(params, PendulumParams):
        state = initial_state or NeuronState(0.0, 0.0)
        if not state.is_finite():
            raise ConfigError("initial state must be finite")
        _record(trace, config, 0.0, state.theta, state.dtheta,
                signal.evaluate(0.0), False)
        use_rk4 = config.integrator == "rk4"
        for i in range(1, grid.steps):
            t_rep = grid.reported_time(i)
            current = signal.evaluate(grid.sample_time(i))
            try:
                if use_rk4:
                    state, spiked = step_pendulum_rk4(
                        state, params, signal, grid.sample_time(i - 1), grid.dt)
                else:
                    state, spiked = step_pendulum_euler(
                        state, params, current, grid.dt)
            except IntegrationBlowupError as err:
                raise err.at(i, t_rep) from None
            if spiked:
                train.append(0, t_rep)
            _record(trace, config, t_rep, state.theta, state.dtheta,
                    current, spiked)
        return trace, train

    if isinstance(params, WheelParams):
        theta = initial_state.theta if initial_state else 0.0
        _record(trace, config, 0.0, theta, 0.0, signal.evaluate(0.0), False)
        for i in range(1, grid.steps):
            t_rep = grid.reported_time(i)
            current = signal.evaluate(grid.sample_time(i))
            try:
                theta, spiked = step_wheel(theta, params, current, grid.dt)
            except IntegrationBlowupError as err:
                raise err.at(i, t_rep) from None
            if spiked:
                train.append(0, t_rep)
            _record(trace, config, t_rep, theta, 0.0, current, spiked)
        return trace, train

    if isinstance(params, LifParams):
        v = initial_state.theta if initial_state else params.v_rest
        _record(trace, config, 0.0, v, 0.0, signal.evaluate(0.0), False)
        for i in range(1, grid.steps):
            t_rep = grid.reported_time(i)
            current = signal.evaluate(grid.sample_time(i))
            try:
                v, spiked = step_lif(v, params, current, grid.dt)
            except IntegrationBlowupError as err:
                raise err.at(i, t_rep) from None
            if spiked:
                train.append(0, t_rep)
            _record(trace, config, t_rep, v, 0.0, current, spiked)
        return trace, train

    if isinstance(params, IzhikevichParams):
        if initial_state:
            v, u = initial_state.theta, initial_state.dtheta
        else:
            v, u = params.c, params.b * params.c
        _record(trace, config, 0.0, v, u, signal.evaluate(0.0), False)
        for i in range(1, grid.steps):
            t_rep = grid.reported_time(i)
            current = signal.evaluate(grid.sample_time(i))
            try:
                v, u, spiked = step_izhikevich(v, u, params, current, grid.dt)
            except IntegrationBlowupError as err:
                raise err.at(i, t_rep) from None
            if spiked:
                train.append(0, t_rep)
            _record(trace, config, t_rep, v, u, current, spiked)
        return trace, train

    raise ConfigError(f"unsupported model params: {type(params).__name__}")


def _record(trace: TraceRecord, config: SimConfig, t: float, a: float,
            b: float, current: float, spiked: bool) -> None:
    if config.record_trace:
        trace.append(TraceRow(t, a, b, current, spiked))


def mean(values: list[float]) -> float:
    return math.fsum(values) / len(values)


def isi_list(times: list[float], discard_before_ms: float = 0.0) -> list[float]:
    """Inter-spike intervals of a sorted spike-time list after a warm-up cut."""
    kept = [t for t in times if t >= discard_before_ms]
    return [b - a for a, b in zip(kept, kept[1:])]


def isi_cv(times: list[float], discard_before_ms: float = 0.0) -> float:
    """Coefficient of variation of the inter-spike intervals."""
    isis = isi_list(times, discard_before_ms)
    if len(isis) < 2:
        raise ValueError("need at least two intervals for a CV")
    m = mean(isis)
    var = math.fsum((x - m) ** 2 for x in isis) / len(isis)
    return math.sqrt(var) / m
