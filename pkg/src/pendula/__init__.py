"""Pendulum-style phase-threshold spiking neurons: deterministic simulation,
plasticity, and a fixed-point hardware-emulation path."""

__version__ = "0.1.0"

from .errors import ConfigError, IntegrationBlowupError
from .fixedpoint import (ErrorReport, FixedState, QFormat, SineLut,
                         compare_fixed_vs_float, from_fixed, lut_sin,
                         run_pendulum_fixed, step_pendulum_fixed, to_fixed)
from .models import (IzhikevichParams, LifParams, NeuronState, PendulumParams,
                     WheelParams, pendulum_derivatives, step_izhikevich,
                     step_lif, step_pendulum_euler, step_pendulum_rk4,
                     step_wheel)
from .network import (LayerConfig, NetworkRun, SynapticTraces, run_network,
                      synaptic_current)
from .plasticity import (HebbianParams, SpikeHistory, StdpParams, WeightMatrix,
                         clip_weights, hebbian_step, on_post_spike,
                         on_pre_spike, stdp_delta)
from .recording import SpikeTrain, TraceRecord, TraceRow, match_spike_trains
from .signals import Constant, InputSignal, Sampled, Sinusoid, Zero
from .simulate import SimConfig, isi_cv, isi_list, simulate_single

__all__ = [
    "ConfigError", "IntegrationBlowupError",
    "ErrorReport", "FixedState", "QFormat", "SineLut",
    "compare_fixed_vs_float", "from_fixed", "lut_sin", "run_pendulum_fixed",
    "step_pendulum_fixed", "to_fixed",
    "IzhikevichParams", "LifParams", "NeuronState", "PendulumParams",
    "WheelParams", "pendulum_derivatives", "step_izhikevich", "step_lif",
    "step_pendulum_euler", "step_pendulum_rk4", "step_wheel",
    "LayerConfig", "NetworkRun", "SynapticTraces", "run_network",
    "synaptic_current",
    "HebbianParams", "SpikeHistory", "StdpParams", "WeightMatrix",
    "clip_weights", "hebbian_step", "on_post_spike", "on_pre_spike",
    "stdp_delta",
    "SpikeTrain", "TraceRecord", "TraceRow", "match_spike_trains",
    "Constant", "InputSignal", "Sampled", "Sinusoid", "Zero",
    "SimConfig", "isi_cv", "isi_list", "simulate_single",
]
