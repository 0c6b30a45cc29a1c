"""Synaptic weight matrix with Hebbian and spike-timing-dependent updates.

Weights are indexed w[post][pre]. STDP uses nearest-neighbor pairing: each
spike pairs only with the other neuron's most recent spike, the weight
change is a_plus*exp(-dt/tau_plus) for causal pairs and
-a_minus*exp(-dt/tau_minus) for anti-causal pairs, and simultaneous spikes
produce no STDP change at all (co-firing is the Hebbian rule's job). The
spike history is brought up to date before the plasticity phase of a step,
so a same-step spike shadows older spikes of the same neuron under
nearest-neighbor pairing.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError


@dataclass(frozen=True)
class StdpParams:
    a_plus: float = 0.01
    a_minus: float = 0.012
    tau_plus: float = 20.0
    tau_minus: float = 20.0

    def __post_init__(self):
        for name in ("a_plus", "a_minus", "tau_plus", "tau_minus"):
            if not (getattr(self, name) > 0.0):
                raise ConfigError(f"StdpParams.{name} must be > 0")


@dataclass(frozen=True)
class HebbianParams:
    eta: float = 0.05
    window_ms: float = 0.0

    def __post_init__(self):
        if not (self.eta > 0.0):
            raise ConfigError("eta must be > 0")
        if not (self.window_ms >= 0.0):
            raise ConfigError("window_ms must be >= 0")


class WeightMatrix:
    """n x n synaptic weights, zero diagonal, entries clipped to [w_min, w_max]."""

    def __init__(self, n: int, w_min: float = 0.0, w_max: float = 1.0):
        if n < 1:
            raise ConfigError("WeightMatrix needs n >= 1")
        if not (w_max > w_min):
            raise ConfigError("w_max must exceed w_min")
        self.n = n
        self.w_min = w_min
        self.w_max = w_max
        self.w = [[0.0] * n for _ in range(n)]

    @classmethod
    def zeros(cls, n: int, w_min: float = 0.0, w_max: float = 1.0) -> "WeightMatrix":
        return cls(n, w_min, w_max)

    @classmethod
    def constant(cls, n: int, value: float, w_min: float = 0.0,
                 w_max: float = 1.0) -> "WeightMatrix":
        m = cls(n, w_min, w_max)
        for i in range(n):
            for j in range(n):
                if i != j:
                    m.w[i][j] = value
        m.clip()
        return m

    @classmethod
    def seeded_random(cls, n: int, seed: int, w_min: float = 0.0,
                      w_max: float = 1.0) -> "WeightMatrix":
        """Uniform off-diagonal weights in [0, 0.1*w_max]."""
        rng = random.Random(seed)
        m = cls(n, w_min, w_max)
        for i in range(n):
            for j in range(n):
                if i != j:
                    m.w[i][j] = rng.uniform(0.0, 0.1 * w_max)
        m.clip()
        return m

    def copy(self) -> "WeightMatrix":
        m = WeightMatrix(self.n, self.w_min, self.w_max)
        m.w = [row[:] for row in self.w]
        return m

    def clip(self) -> "WeightMatrix":
        for i in range(self.n):
            row = self.w[i]
            for j in range(self.n):
                if i == j:
                    row[j] = 0.0
                elif row[j] < self.w_min:
                    row[j] = self.w_min
                elif row[j] > self.w_max:
                    row[j] = self.w_max
        return self

    def __eq__(self, other) -> bool:
        return (isinstance(other, WeightMatrix) and self.n == other.n
                and self.w == other.w)

    def to_csv(self) -> str:
        lines = [str(self.n)]
        lines += [",".join(repr(v) for v in row) for row in self.w]
        return "\n".join(lines) + "\n"

    def write_csv(self, path: Path | str) -> None:
        Path(path).write_text(self.to_csv())

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "w_min": self.w_min,
                           "w_max": self.w_max, "w": self.w})

    @classmethod
    def from_csv(cls, path: Path | str, w_min: float = 0.0,
                 w_max: float = 1.0) -> "WeightMatrix":
        lines = Path(path).read_text().splitlines()
        n = int(lines[0])
        m = cls(n, w_min, w_max)
        for i in range(n):
            m.w[i] = [float(v) for v in lines[1 + i].split(",")]
        return m


class SpikeHistory:
    """Most recent spike time per neuron (None before the first spike)."""

    def __init__(self, n: int):
        self.n = n
        self.last: list[float | None] = [None] * n

    def record(self, neuron: int, t: float) -> None:
        prev = self.last[neuron]
        if prev is not None and t < prev:
            raise ValueError(f"spike times must be non-decreasing "
                             f"(neuron {neuron}: {t} after {prev})")
        self.last[neuron] = t


def stdp_delta(delta_t: float, params: StdpParams) -> float:
    """Weight change for a single pairing, delta_t = t_post - t_pre."""
    if not math.isfinite(delta_t):
        raise ConfigError("delta_t must be finite")
    if delta_t == 0.0:
        raise ValueError("delta_t == 0 is the simultaneity case; "
                         "it is not an STDP pairing")
    if delta_t > 0.0:
        return params.a_plus * math.exp(-delta_t / params.tau_plus)
    return -params.a_minus * math.exp(delta_t / params.tau_minus)


def on_post_spike(post: int, t: float, history: SpikeHistory,
                  w: WeightMatrix, params: StdpParams) -> WeightMatrix:
    """Potentiate w[post][pre] for every pre whose last spike precedes t."""
    for pre in range(w.n):
        if pre == post:
            continue
        t_pre = history.last[pre]
        if t_pre is not None and t - t_pre > 0.0:
            w.w[post][pre] += params.a_plus * math.exp(-(t - t_pre) / params.tau_plus)
    return w.clip()


def on_pre_spike(pre: int, t: float, history: SpikeHistory,
                 w: WeightMatrix, params: StdpParams) -> WeightMatrix:
    """Depress w[post][pre] for every post whose last spike precedes t."""
    for post in range(w.n):
        if post == pre:
            continue
        t_post = history.last[post]
        if t_post is not None and t_post < t:
            w.w[post][pre] -= params.a_minus * math.exp(-(t - t_post) / params.tau_minus)
    return w.clip()


def hebbian_step(spiked_now: list[bool], history: SpikeHistory, t: float,
                 w: WeightMatrix, params: HebbianParams) -> WeightMatrix:
    """Co-firing increment: w[i][j] += eta for every i spiking now whose
    neighbor j last spiked within [t - window_ms, t] (history must already
    include this step's spikes, so same-step co-firing counts)."""
    for i in range(w.n):
        if not spiked_now[i]:
            continue
        for j in range(w.n):
            if j == i:
                continue
            t_j = history.last[j]
            if t_j is not None and t_j >= t - params.window_ms:
                w.w[i][j] += params.eta
    return w.clip()


def clip_weights(w: WeightMatrix) -> WeightMatrix:
    return w.clip()
