"""Input current signals.

Four variants: a constant, a sinusoid with bias, a sampled series with
nearest-sample lookup, and zero. All evaluate as I(t) with t in ms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ConfigError


@dataclass(frozen=True)
class Constant:
    value: float

    def evaluate(self, t: float) -> float:
        return self.value


@dataclass(frozen=True)
class Sinusoid:
    """amplitude * sin(angular_freq * t) + bias, angular_freq in rad/ms."""

    amplitude: float
    angular_freq: float
    bias: float = 0.0

    def evaluate(self, t: float) -> float:
        return self.amplitude * math.sin(self.angular_freq * t) + self.bias


@dataclass(frozen=True)
class Sampled:
    """Evenly spaced samples; evaluation picks the nearest sample (half up).

    The sample grid must cover the full simulation window: evaluating past
    the last sample is a config error, not a clamp.
    """

    sample_dt: float
    values: tuple[float, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.sample_dt <= 0:
            raise ConfigError("Sampled.sample_dt must be > 0")
        if not self.values:
            raise ConfigError("Sampled.values must be non-empty")
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    def covers(self, duration: float) -> bool:
        return (len(self.values) - 1) * self.sample_dt >= duration

    def evaluate(self, t: float) -> float:
        idx = math.floor(t / self.sample_dt + 0.5)
        if idx < 0:
            idx = 0
        if idx >= len(self.values):
            raise ConfigError(
                f"Sampled signal does not cover t={t:g} ms "
                f"(last sample at {(len(self.values) - 1) * self.sample_dt:g} ms)")
        return self.values[idx]


@dataclass(frozen=True)
class Zero:
    def evaluate(self, t: float) -> float:
        return 0.0


InputSignal = Constant | Sinusoid | Sampled | Zero


def signal_to_dict(sig: InputSignal) -> dict:
    if isinstance(sig, Constant):
        return {"kind": "constant", "value": sig.value}
    if isinstance(sig, Sinusoid):
        return {"kind": "sinusoid", "amplitude": sig.amplitude,
                "angular_freq": sig.angular_freq, "bias": sig.bias}
    if isinstance(sig, Sampled):
        return {"kind": "sampled", "sample_dt": sig.sample_dt,
                "values": list(sig.values)}
    if isinstance(sig, Zero):
        return {"kind": "zero"}
    raise TypeError(f"not an input signal: {sig!r}")


def signal_from_dict(spec: dict) -> InputSignal:
    """Parse a signal spec dict; unknown kinds and fields are rejected."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ConfigError(f"input spec must be an object with a 'kind': {spec!r}")
    kind = spec["kind"]
    extra = set(spec) - {"kind"}
    if kind == "constant":
        _expect_keys(extra, {"value"}, kind)
        return Constant(_num(spec, "value"))
    if kind == "sinusoid":
        _expect_keys(extra, {"amplitude", "angular_freq", "bias"}, kind)
        return Sinusoid(_num(spec, "amplitude"), _num(spec, "angular_freq"),
                        _num(spec, "bias", 0.0))
    if kind == "sampled":
        _expect_keys(extra, {"sample_dt", "values"}, kind)
        values = spec.get("values")
        if not isinstance(values, list):
            raise ConfigError("sampled input needs a 'values' list")
        return Sampled(_num(spec, "sample_dt"), tuple(values))
    if kind == "zero":
        _expect_keys(extra, set(), kind)
        return Zero()
    raise ConfigError(f"unknown input kind {kind!r}")


def _expect_keys(got: set, allowed: set, kind: str) -> None:
    unknown = got - allowed
    if unknown:
        raise ConfigError(f"unknown field(s) {sorted(unknown)} in {kind!r} input")


def _num(spec: dict, key: str, default: float | None = None) -> float:
    if key not in spec:
        if default is None:
            raise ConfigError(f"input spec missing required field {key!r}")
        return default
    v = spec[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"input field {key!r} must be a number, got {v!r}")
    return float(v)
