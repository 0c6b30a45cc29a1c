"""Experiment configuration: defaults, JSON parsing, strict validation.

A config is a JSON object with a ``version`` field. Field resolution is
defaults < config file < CLI flags; unknown fields anywhere are rejected
before any simulation starts. The fully resolved dict is echoed into
run.json so a run can be re-executed bit-identically from its own output
directory.
"""

from __future__ import annotations

import copy
import json
import math
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError
from .models import (IzhikevichParams, LifParams, ModelParams,
                     PendulumParams, WheelParams)
from .network import LayerConfig
from .plasticity import HebbianParams, StdpParams, WeightMatrix
from .signals import InputSignal, Sampled, signal_from_dict
from .simulate import SimConfig

CONFIG_VERSION = 1

EXPERIMENTS = ("single", "layer", "stdp", "hebbian", "compare-models",
               "fixedpoint-report")

_SINE_DRIVE_INPUT = {"kind": "sinusoid", "amplitude": 1.5, "angular_freq": 0.01,
               "bias": 1.2}
_PULSE_A = {"kind": "pulse", "amplitude": 3.0, "width_ms": 1.5,
            "period_ms": 50.0, "delay_ms": 0.0}
_PULSE_B = {"kind": "pulse", "amplitude": 3.0, "width_ms": 1.5,
            "period_ms": 50.0, "delay_ms": 5.0}

_BASE = {
    "version": CONFIG_VERSION,
    "experiment": None,
    "seed": 0,
    "out_dir": None,
    "sim": {"duration_ms": 500.0, "dt_ms": 0.1, "integrator": "euler",
            "record_trace": True},
    "model": {"kind": "pendulum"},
}

DEFAULTS: dict[str, dict] = {
    "single": {**copy.deepcopy(_BASE), "input": dict(_SINE_DRIVE_INPUT)},
    "layer": {
        **copy.deepcopy(_BASE),
        "sim": {"duration_ms": 500.0, "dt_ms": 0.1, "integrator": "euler",
                "record_trace": False},
        "network": {
            "n": 5, "syn_tau": 5.0, "syn_gain": 1.0,
            "w_min": 0.0, "w_max": 1.0,
            "weight_init": {"kind": "constant", "value": 0.1},
            "snapshot_every_steps": 0,
            "inputs": [{"kind": "constant", "value": 1.5}] * 5,
        },
        "plasticity": {"stdp": None, "hebbian": None},
    },
    "stdp": {
        **copy.deepcopy(_BASE),
        "sim": {"duration_ms": 500.0, "dt_ms": 0.1, "integrator": "euler",
                "record_trace": False},
        "network": {
            "n": 2, "syn_tau": 5.0, "syn_gain": 1.0,
            "w_min": 0.0, "w_max": 1.0,
            "weight_init": {"kind": "constant", "value": 0.05},
            "snapshot_every_steps": 0,
            "inputs": [dict(_PULSE_A), dict(_PULSE_B)],
        },
        "plasticity": {
            "stdp": {"a_plus": 0.01, "a_minus": 0.012,
                     "tau_plus": 20.0, "tau_minus": 20.0},
            "hebbian": None,
        },
    },
    "hebbian": {
        **copy.deepcopy(_BASE),
        "sim": {"duration_ms": 500.0, "dt_ms": 0.1, "integrator": "euler",
                "record_trace": False},
        "network": {
            "n": 2, "syn_tau": 5.0, "syn_gain": 0.0,
            "w_min": 0.0, "w_max": 1.0,
            "weight_init": {"kind": "zeros"},
            "snapshot_every_steps": 0,
            "inputs": [dict(_PULSE_A), dict(_PULSE_A)],
        },
        "plasticity": {
            "stdp": None,
            "hebbian": {"eta": 0.01, "window_ms": 0.0},
        },
    },
    "compare-models": {
        **copy.deepcopy(_BASE),
        "sim": {"duration_ms": 500.0, "dt_ms": 0.1, "integrator": "euler",
                "record_trace": False},
        "compare": {
            "input_value": 10.0,
            "lif": {},
            "izhikevich": {},
        },
    },
    "fixedpoint-report": {
        **copy.deepcopy(_BASE),
        "input": dict(_SINE_DRIVE_INPUT),
        "fixedpoint": {
            "total_bits": 32,
            "frac_bits_list": [8, 16, 24],
            "lut_sizes": [256, 1024],
            "interpolate": False,
            "match_tol_ms": 5.0,
            "include_float_control": True,
        },
    },
}

_MODEL_FIELDS = {
    "pendulum": {"gamma", "omega0", "threshold_theta", "reset_theta",
                 "reset_dtheta"},
    "wheel": {"omega", "alpha", "threshold_theta"},
    "lif": {"tau_m", "v_rest", "v_threshold", "v_reset", "r"},
    "izhikevich": {"a", "b", "c", "d", "v_threshold"},
}
_MODEL_TYPES = {"pendulum": PendulumParams, "wheel": WheelParams,
                "lif": LifParams, "izhikevich": IzhikevichParams}


def deep_merge(base: dict, override: dict) -> dict:
    """Field-wise merge; nested dicts merge recursively, lists replace.

    A dict carrying a 'kind' is a self-contained variant spec (inputs,
    weight_init, model) and replaces the base value wholesale — merging a
    constant input onto a default sinusoid must not leave sinusoid fields
    behind.
    """
    out = copy.deepcopy(base)
    for key, value in override.items():
        if (isinstance(value, dict) and "kind" not in value
                and isinstance(out.get(key), dict)):
            out[key] = deep_merge(out[key], value)
        else:
            out[key] = copy.deepcopy(value)
    return out


@dataclass
class ExperimentConfig:
    experiment: str
    seed: int
    out_dir: str | None
    sim: SimConfig
    model: ModelParams
    input_signal: InputSignal | None
    layer: LayerConfig | None
    compare: dict | None
    fixedpoint: dict | None
    resolved: dict        # complete dict for the run.json echo


def load_config_file(path: str | Path) -> dict:
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as err:
        raise ConfigError(f"cannot read config file: {err}") from None
    except json.JSONDecodeError as err:
        raise ConfigError(f"config file is not valid JSON: {err}") from None
    if not isinstance(raw, dict):
        raise ConfigError("config file must hold a JSON object")
    return raw


def resolve_config(experiment: str, file_dict: dict | None,
                   overrides: dict | None = None) -> ExperimentConfig:
    """Merge defaults, config file, and CLI overrides; validate everything."""
    if experiment not in EXPERIMENTS:
        raise ConfigError(f"unknown experiment {experiment!r}")
    merged = copy.deepcopy(DEFAULTS[experiment])
    merged["experiment"] = experiment
    if file_dict:
        if "version" not in file_dict:
            raise ConfigError("config file must carry a 'version' field")
        if file_dict["version"] != CONFIG_VERSION:
            raise ConfigError(f"unsupported config version "
                              f"{file_dict['version']!r} (expected {CONFIG_VERSION})")
        declared = file_dict.get("experiment")
        if declared is not None and declared != experiment:
            raise ConfigError(f"config file is for experiment {declared!r}, "
                              f"not {experiment!r}")
        merged = deep_merge(merged, file_dict)
        merged["experiment"] = experiment
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key in ("duration_ms", "dt_ms", "integrator"):
            merged["sim"][key] = value
        elif key in ("seed", "out_dir"):
            merged[key] = value
        else:
            raise ConfigError(f"unknown override {key!r}")
    return _validate(merged)


def _validate(cfg: dict) -> ExperimentConfig:
    experiment = cfg.get("experiment")
    if experiment not in EXPERIMENTS:
        raise ConfigError(f"unknown experiment {experiment!r}")
    allowed = set(DEFAULTS[experiment])
    unknown = set(cfg) - allowed
    if unknown:
        raise ConfigError(f"unknown config field(s): {sorted(unknown)}")

    seed = cfg.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int) or seed < 0:
        raise ConfigError("seed must be a non-negative integer")
    out_dir = cfg.get("out_dir")
    if out_dir is not None and not isinstance(out_dir, str):
        raise ConfigError("out_dir must be a string")

    sim = _validate_sim(cfg["sim"])
    model = _validate_model(cfg["model"])

    input_signal = None
    if "input" in cfg:
        input_signal = _parse_input(cfg["input"], sim)

    layer = None
    if "network" in cfg:
        if not isinstance(model, PendulumParams):
            raise ConfigError("network experiments require the pendulum model")
        layer = _validate_network(cfg["network"], cfg.get("plasticity", {}),
                                  model, sim, seed)

    compare = None
    if "compare" in cfg:
        compare = _validate_compare(cfg["compare"])

    fixedpoint = None
    if "fixedpoint" in cfg:
        fixedpoint = _validate_fixedpoint(cfg["fixedpoint"])

    if sim.integrator == "rk4" and not isinstance(model, PendulumParams):
        raise ConfigError("rk4 integrator is only available for the pendulum model")
    if sim.integrator == "rk4" and experiment not in ("single",):
        raise ConfigError(f"{experiment} runs use the euler integrator")

    return ExperimentConfig(
        experiment=experiment, seed=seed, out_dir=out_dir, sim=sim,
        model=model, input_signal=input_signal, layer=layer,
        compare=compare, fixedpoint=fixedpoint, resolved=cfg)


def _check_keys(section: dict, allowed: set, name: str) -> None:
    if not isinstance(section, dict):
        raise ConfigError(f"{name} section must be an object")
    unknown = set(section) - allowed
    if unknown:
        raise ConfigError(f"unknown field(s) in {name}: {sorted(unknown)}")


def _num(section: dict, key: str, default, name: str) -> float:
    v = section.get(key, default)
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{name}.{key} must be a number")
    return float(v)


def _validate_sim(section: dict) -> SimConfig:
    _check_keys(section, {"duration_ms", "dt_ms", "integrator", "record_trace"},
                "sim")
    integ = section.get("integrator", "euler")
    record = section.get("record_trace", True)
    if not isinstance(record, bool):
        raise ConfigError("sim.record_trace must be a boolean")
    return SimConfig(
        duration_ms=_num(section, "duration_ms", 500.0, "sim"),
        dt_ms=_num(section, "dt_ms", 0.1, "sim"),
        integrator=integ, record_trace=record)


def _validate_model(section: dict) -> ModelParams:
    if not isinstance(section, dict) or "kind" not in section:
        raise ConfigError("model section needs a 'kind'")
    kind = section["kind"]
    if kind not in _MODEL_FIELDS:
        raise ConfigError(f"unknown model kind {kind!r}")
    _check_keys(section, _MODEL_FIELDS[kind] | {"kind"}, f"model({kind})")
    kwargs = {k: _num(section, k, getattr(_MODEL_TYPES[kind](), k), "model")
              for k in _MODEL_FIELDS[kind] if k in section}
    return _MODEL_TYPES[kind](**kwargs)


def _parse_input(spec: dict, sim: SimConfig) -> InputSignal:
    """Signal spec; the config layer adds a 'pulse' convenience kind that
    lowers to a Sampled series on the sim dt grid."""
    if isinstance(spec, dict) and spec.get("kind") == "pulse":
        _check_keys(spec, {"kind", "amplitude", "width_ms", "period_ms",
                           "delay_ms"}, "pulse input")
        amp = _num(spec, "amplitude", None, "pulse")
        width = _num(spec, "width_ms", None, "pulse")
        period = _num(spec, "period_ms", None, "pulse")
        delay = _num(spec, "delay_ms", 0.0, "pulse")
        if width <= 0 or period <= 0 or width > period or delay < 0:
            raise ConfigError("pulse needs 0 < width_ms <= period_ms and "
                              "delay_ms >= 0")
        count = sim.steps + 2   # one spare sample keeps coverage past T
        values = []
        for i in range(count):
            t = i * sim.dt_ms - delay
            values.append(amp if t >= 0 and math.fmod(t, period) < width
                          else 0.0)
        return Sampled(sample_dt=sim.dt_ms, values=tuple(values))
    sig = signal_from_dict(spec)
    if isinstance(sig, Sampled) and not sig.covers(sim.duration_ms):
        raise ConfigError("sampled input does not cover the run duration")
    return sig


def _validate_network(section: dict, plasticity: dict,
                      model: PendulumParams, sim: SimConfig,
                      seed: int) -> LayerConfig:
    _check_keys(section, {"n", "syn_tau", "syn_gain", "w_min", "w_max",
                          "weight_init", "snapshot_every_steps", "inputs"},
                "network")
    n = section.get("n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ConfigError("network.n must be a positive integer")
    inputs_spec = section.get("inputs")
    if not isinstance(inputs_spec, list) or len(inputs_spec) != n:
        raise ConfigError("network.inputs must be a list of length n")
    inputs = [_parse_input(s, sim) for s in inputs_spec]

    w_min = _num(section, "w_min", 0.0, "network")
    w_max = _num(section, "w_max", 1.0, "network")
    init = section.get("weight_init", {"kind": "zeros"})
    _check_keys(init, {"kind", "value"}, "network.weight_init")
    kind = init.get("kind", "zeros")
    if kind == "zeros":
        weights = WeightMatrix.zeros(n, w_min, w_max)
    elif kind == "constant":
        weights = WeightMatrix.constant(n, _num(init, "value", None,
                                                "weight_init"), w_min, w_max)
    elif kind == "random":
        weights = WeightMatrix.seeded_random(n, seed, w_min, w_max)
    else:
        raise ConfigError(f"unknown weight_init kind {kind!r}")

    stdp = hebb = None
    if plasticity:
        _check_keys(plasticity, {"stdp", "hebbian"}, "plasticity")
        if plasticity.get("stdp") is not None:
            sec = plasticity["stdp"]
            _check_keys(sec, {"a_plus", "a_minus", "tau_plus", "tau_minus"},
                        "plasticity.stdp")
            stdp = StdpParams(
                a_plus=_num(sec, "a_plus", 0.01, "stdp"),
                a_minus=_num(sec, "a_minus", 0.012, "stdp"),
                tau_plus=_num(sec, "tau_plus", 20.0, "stdp"),
                tau_minus=_num(sec, "tau_minus", 20.0, "stdp"))
        if plasticity.get("hebbian") is not None:
            sec = plasticity["hebbian"]
            _check_keys(sec, {"eta", "window_ms"}, "plasticity.hebbian")
            hebb = HebbianParams(eta=_num(sec, "eta", 0.05, "hebbian"),
                                 window_ms=_num(sec, "window_ms", 0.0,
                                                "hebbian"))

    snapshot = section.get("snapshot_every_steps", 0)
    if isinstance(snapshot, bool) or not isinstance(snapshot, int):
        raise ConfigError("snapshot_every_steps must be an integer")

    return LayerConfig(
        n=n, params=model, inputs=inputs,
        syn_tau=_num(section, "syn_tau", 5.0, "network"),
        syn_gain=_num(section, "syn_gain", 1.0, "network"),
        weights=weights, stdp=stdp, hebbian=hebb,
        record_trace=sim.record_trace,
        snapshot_every_steps=snapshot)


def _validate_compare(section: dict) -> dict:
    _check_keys(section, {"input_value", "lif", "izhikevich"}, "compare")
    lif_sec = section.get("lif", {})
    _check_keys(lif_sec, _MODEL_FIELDS["lif"], "compare.lif")
    izh_sec = section.get("izhikevich", {})
    _check_keys(izh_sec, _MODEL_FIELDS["izhikevich"], "compare.izhikevich")
    return {
        "input_value": _num(section, "input_value", 10.0, "compare"),
        "lif": LifParams(**{k: _num(lif_sec, k, getattr(LifParams(), k),
                                    "compare.lif") for k in lif_sec}),
        "izhikevich": IzhikevichParams(
            **{k: _num(izh_sec, k, getattr(IzhikevichParams(), k),
                       "compare.izhikevich") for k in izh_sec}),
    }


def _validate_fixedpoint(section: dict) -> dict:
    _check_keys(section, {"total_bits", "frac_bits_list", "lut_sizes",
                          "interpolate", "match_tol_ms",
                          "include_float_control"}, "fixedpoint")
    total = section.get("total_bits", 32)
    fracs = section.get("frac_bits_list", [8, 16, 24])
    luts = section.get("lut_sizes", [256, 1024])
    interp = section.get("interpolate", False)
    control = section.get("include_float_control", True)
    if isinstance(total, bool) or not isinstance(total, int):
        raise ConfigError("fixedpoint.total_bits must be an integer")
    if (not isinstance(fracs, list) or not fracs
            or not all(isinstance(f, int) and not isinstance(f, bool)
                       for f in fracs)):
        raise ConfigError("fixedpoint.frac_bits_list must be a list of ints")
    if (not isinstance(luts, list) or not luts
            or not all(isinstance(s, int) and not isinstance(s, bool)
                       for s in luts)):
        raise ConfigError("fixedpoint.lut_sizes must be a list of ints")
    if not isinstance(interp, bool) or not isinstance(control, bool):
        raise ConfigError("fixedpoint.interpolate/include_float_control "
                          "must be booleans")
    return {
        "total_bits": total,
        "frac_bits_list": list(fracs),
        "lut_sizes": list(luts),
        "interpolate": interp,
        "match_tol_ms": _num(section, "match_tol_ms", 5.0, "fixedpoint"),
        "include_float_control": control,
    }
